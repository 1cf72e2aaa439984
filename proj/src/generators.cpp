#include "codim1/generators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "codim1/errors.hpp"
#include "internal/rng.hpp"

namespace codim1 {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw invalid_argument(msg);
}

FiniteMetricSpace make_sphere(const ManifoldSpec& spec) {
    const double r = spec.params.empty() ? 1.0 : spec.params[0];
    require(r > 0.0, "sphere radius must be > 0");
    Rng rng(spec.seed);
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(spec.sample_count));
    for (int i = 0; i < spec.sample_count; ++i) {
        const double z = rng.uniform(-1.0, 1.0);
        const double phi = rng.uniform(0.0, 2.0 * M_PI);
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        pts.push_back({r * s * std::cos(phi), r * s * std::sin(phi), r * z});
    }
    SpaceMetadata meta;
    meta.kind = "sphere";
    meta.params = {r};
    meta.seed = spec.seed;
    meta.analytic_area = 4.0 * M_PI * r * r;
    meta.analytic_diameter = M_PI * r;
    meta.model_L = 1.0;
    return FiniteMetricSpace::build(std::move(pts), MetricModel::kAnalytic,
                                    AnalyticForm::kSphereArc, 2, std::move(meta));
}

FiniteMetricSpace make_circle(const ManifoldSpec& spec) {
    const double r = spec.params.empty() ? 1.0 : spec.params[0];
    require(r > 0.0, "circle radius must be > 0");
    // Evenly spaced with a seed-dependent phase; the angle rides in coord z so
    // the arc metric is exact.
    Rng rng(spec.seed);
    const double phase = rng.uniform(0.0, 2.0 * M_PI / std::max(1, spec.sample_count));
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(spec.sample_count));
    for (int i = 0; i < spec.sample_count; ++i) {
        const double a = phase + 2.0 * M_PI * i / spec.sample_count;
        pts.push_back({r * std::cos(a), r * std::sin(a), a});
    }
    SpaceMetadata meta;
    meta.kind = "circle";
    meta.params = {r};
    meta.seed = spec.seed;
    meta.analytic_area = 2.0 * M_PI * r;  // H_1 of the circle
    meta.analytic_diameter = M_PI * r;
    meta.model_L = 1.0;
    return FiniteMetricSpace::build(std::move(pts), MetricModel::kAnalytic,
                                    AnalyticForm::kCircleArc, 1, std::move(meta));
}

FiniteMetricSpace make_torus(const ManifoldSpec& spec) {
    const double a = spec.params.size() > 0 ? spec.params[0] : 1.0;
    const double b = spec.params.size() > 1 ? spec.params[1] : 1.0;
    require(a > 0.0 && b > 0.0, "torus side lengths must be > 0");
    Rng rng(spec.seed);
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(spec.sample_count));
    for (int i = 0; i < spec.sample_count; ++i) {
        pts.push_back({rng.uniform(0.0, a), rng.uniform(0.0, b), 0.0});
    }
    SpaceMetadata meta;
    meta.kind = "torus";
    meta.params = {a, b};
    meta.seed = spec.seed;
    meta.analytic_area = a * b;
    meta.analytic_diameter = std::sqrt(a * a / 4.0 + b * b / 4.0);
    meta.model_L = 2.0 * meta.analytic_diameter / std::min(a, b);
    return FiniteMetricSpace::build(std::move(pts), MetricModel::kAnalytic,
                                    AnalyticForm::kFlatTorus, 2, std::move(meta));
}

FiniteMetricSpace make_interval(const ManifoldSpec& spec) {
    const double len = spec.params.empty() ? 1.0 : spec.params[0];
    require(len > 0.0, "interval length must be > 0");
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(spec.sample_count));
    for (int i = 0; i < spec.sample_count; ++i) {
        const double t = spec.sample_count == 1
                             ? 0.0
                             : len * static_cast<double>(i) / (spec.sample_count - 1);
        pts.push_back({t, 0.0, 0.0});
    }
    SpaceMetadata meta;
    meta.kind = "interval_test";
    meta.params = {len};
    meta.seed = spec.seed;
    meta.analytic_area = len;
    meta.analytic_diameter = len;
    meta.model_L = 1.0;
    return FiniteMetricSpace::build(std::move(pts), MetricModel::kAnalytic,
                                    AnalyticForm::kLine, 1, std::move(meta));
}

// Dumbbell profile: radius rho(x) of the surface of revolution around the x
// axis. Bells of radius R centered at +-xc, neck of radius eps over
// |x| <= len/2, and a cubic Hermite blend over a window of half-width eps/2
// at each junction.
struct DumbbellProfile {
    double eps, xc, x_tip, blend_lo, blend_hi;
    double h00(double t) const { return (1 + 2 * t) * (1 - t) * (1 - t); }
    double h10(double t) const { return t * (1 - t) * (1 - t); }
    double h01(double t) const { return t * t * (3 - 2 * t); }
    double h11(double t) const { return t * t * (t - 1); }

    double sphere_r(double ax) const {
        const double d = ax - xc;
        return std::sqrt(std::max(0.0, kDumbbellBellRadius * kDumbbellBellRadius - d * d));
    }
    double sphere_dr(double ax) const {
        const double d = ax - xc;
        const double r = sphere_r(ax);
        return r > 1e-12 ? -d / r : 0.0;
    }

    double radius(double x) const {
        const double ax = std::fabs(x);
        if (ax <= blend_lo) return eps;
        if (ax >= blend_hi) return sphere_r(ax);
        const double w = blend_hi - blend_lo;
        const double t = (ax - blend_lo) / w;
        return h00(t) * eps + h10(t) * w * 0.0 + h01(t) * sphere_r(blend_hi) +
               h11(t) * w * sphere_dr(blend_hi);
    }
};

DumbbellProfile dumbbell_profile(double eps) {
    DumbbellProfile p;
    p.eps = eps;
    const double half = kDumbbellNeckLength / 2.0;
    p.xc = half + std::sqrt(kDumbbellBellRadius * kDumbbellBellRadius - eps * eps);
    p.x_tip = p.xc + kDumbbellBellRadius;
    p.blend_lo = half - eps / 2.0;
    p.blend_hi = half + eps / 2.0;
    return p;
}

double dumbbell_junction_angle(double eps) {
    return std::asin(eps / kDumbbellBellRadius);
}

FiniteMetricSpace make_dumbbell(const ManifoldSpec& spec) {
    const double eps = spec.params.empty() ? 0.1 : spec.params[0];
    require(eps > 0.0 && eps < kDumbbellBellRadius,
            "dumbbell neck radius must lie in (0, bell radius)");
    const DumbbellProfile prof = dumbbell_profile(eps);

    // Fine polyline of the profile; uniform in x over the neck and blend,
    // uniform in polar angle over the bells (the tips have a vertical slope).
    std::vector<double> xs;
    const int neck_segments = 800;
    for (int i = 0; i <= neck_segments; ++i) {
        xs.push_back(-prof.blend_hi + 2.0 * prof.blend_hi * i / neck_segments);
    }
    const int bell_segments = 1200;
    const double alpha0 = dumbbell_junction_angle(eps);
    for (int i = 1; i <= bell_segments; ++i) {
        // Polar angle from the junction circle to the tip.
        const double a = alpha0 + (M_PI - alpha0) * i / bell_segments;
        // Angle a measured from the -x direction at the bell center.
        const double x = prof.xc - kDumbbellBellRadius * std::cos(a);
        xs.push_back(x);
        xs.push_back(-x);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    struct Segment {
        double x0, x1, r0, r1, area;
    };
    std::vector<Segment> segs;
    std::vector<double> cdf;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        Segment s;
        s.x0 = xs[i];
        s.x1 = xs[i + 1];
        s.r0 = prof.radius(s.x0);
        s.r1 = prof.radius(s.x1);
        const double arc = std::hypot(s.x1 - s.x0, s.r1 - s.r0);
        s.area = M_PI * (s.r0 + s.r1) * arc;  // lateral area of the frustum
        if (s.area <= 0.0) continue;
        total += s.area;
        segs.push_back(s);
        cdf.push_back(total);
    }

    Rng rng(spec.seed);
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(spec.sample_count));
    for (int i = 0; i < spec.sample_count; ++i) {
        const double u = rng.uniform(0.0, total);
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        const Segment& s = segs[static_cast<std::size_t>(it - cdf.begin())];
        const double t = rng.uniform();
        const double x = s.x0 + t * (s.x1 - s.x0);
        const double r = prof.radius(x);
        const double phi = rng.uniform(0.0, 2.0 * M_PI);
        pts.push_back({x, r * std::cos(phi), r * std::sin(phi)});
    }

    SpaceMetadata meta;
    meta.kind = "dumbbell_surface";
    meta.params = {eps};
    meta.seed = spec.seed;
    meta.analytic_area = total;
    meta.model_L = std::max(2.0, 1.0 / eps);
    auto space = FiniteMetricSpace::build(std::move(pts), MetricModel::kGraphPath,
                                          AnalyticForm::kEuclidean, 2, std::move(meta));
    if (space.graph_scale() > 1.5 * eps) {
        std::ostringstream msg;
        msg << "dumbbell sample too sparse to resolve the neck: graph scale "
            << space.graph_scale() << " vs neck radius " << eps << "; need roughly "
            << dumbbell_recommended_samples(eps) << " samples";
        throw invalid_argument(msg.str());
    }
    return space;
}

}  // namespace

double dumbbell_model_area(double eps) {
    const double r = kDumbbellBellRadius;
    const double cap_h = r - std::sqrt(r * r - eps * eps);
    const double bell = 4.0 * M_PI * r * r - 2.0 * M_PI * r * cap_h;
    return 2.0 * bell + 2.0 * M_PI * eps * kDumbbellNeckLength;
}

double dumbbell_model_inradius(double eps) {
    const double r = kDumbbellBellRadius;
    return r * (M_PI - std::asin(eps / r)) + kDumbbellNeckLength / 2.0;
}

int dumbbell_recommended_samples(double eps) {
    const double a = dumbbell_model_area(eps);
    return static_cast<int>(std::ceil(36.0 * a / (eps * eps)));
}

FiniteMetricSpace generate(const ManifoldSpec& spec) {
    if (spec.sample_count < 1) throw invalid_argument("sample_count must be >= 1");
    if (spec.kind == "sphere") return make_sphere(spec);
    if (spec.kind == "circle") return make_circle(spec);
    if (spec.kind == "torus") return make_torus(spec);
    if (spec.kind == "interval_test") return make_interval(spec);
    if (spec.kind == "dumbbell_surface") return make_dumbbell(spec);
    throw invalid_argument("unknown manifold kind: " + spec.kind);
}

}  // namespace codim1
