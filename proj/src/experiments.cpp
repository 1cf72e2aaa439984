#include "codim1/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "codim1/deformation.hpp"
#include "codim1/errors.hpp"
#include "codim1/io.hpp"
#include "codim1/nerve_maps.hpp"
#include "internal/parallel.hpp"
#include "internal/rng.hpp"

namespace codim1 {

namespace {

const char* kCechNote =
    "Cech cohomology certificates are replaced by Z2 homology of fine nerves "
    "at a fixed scale; witnesses are reported at two successive scales.";
const char* kHomotopyGapNote =
    "The small-displacement homotopy between id and g.p.f is non-constructive "
    "(its displacement threshold has no formula); the pipeline verifies the "
    "constructive stages and the homological certificates only.";

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

double ipow(double x, int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) v *= x;
    return v;
}

double auto_set_scale(const FiniteMetricSpace& space) {
    return std::max(0.55 * space.graph_scale(), 1.5 * space.sample_density());
}

double auto_witness_scale(const FiniteMetricSpace& space, double set_scale) {
    return std::max(5.0 * set_scale, 12.0 * space.sample_density());
}

nlohmann::ordered_json environment_json(const ExperimentConfig& cfg,
                                        const FiniteMetricSpace& space) {
    nlohmann::ordered_json env;
    env["kind"] = space.metadata().kind;
    env["params"] = space.metadata().params;
    env["samples"] = space.size();
    env["seed"] = space.metadata().seed;
    env["resolution"] = cfg.resolution;
    env["graph_scale"] = space.graph_scale();
    env["sample_density"] = space.sample_density();
    env["diameter"] = space.diameter();
    env["manifold_dim"] = space.manifold_dim();
    env["model_L"] = space.metadata().model_L;
    env["threads"] = cfg.threads;
    return env;
}

double colatitude(const Vec3& p, double radius) {
    return std::acos(std::clamp(p.z / radius, -1.0, 1.0));
}

}  // namespace

std::vector<FamilySet> build_family(const FiniteMetricSpace& space,
                                    const std::string& family,
                                    const std::vector<double>& values, double scale) {
    std::vector<FamilySet> out;
    if (family == "none") return out;
    const double w = scale > 0.0 ? scale : auto_set_scale(space);

    if (family == "latitude") {
        if (space.metadata().kind != "sphere") {
            throw invalid_argument("latitude family requires a sphere");
        }
        const double radius = space.metadata().params.at(0);
        for (double theta : values) {
            FamilySet fs;
            fs.value = theta;
            fs.id = "latitude:" + fmt(theta);
            fs.set.scale = w;
            fs.set.role = SetRole::kSeparatingSet;
            for (int i = 0; i < space.size(); ++i) {
                const double c = colatitude(space.coords()[static_cast<std::size_t>(i)], radius);
                if (std::fabs(c - theta) * radius <= w) fs.set.indices.push_back(i);
            }
            out.push_back(std::move(fs));
        }
        return out;
    }
    if (family == "level_set") {
        for (double level : values) {
            FamilySet fs;
            fs.value = level;
            fs.id = "level:" + fmt(level);
            fs.set.scale = w;
            fs.set.role = SetRole::kLevelSet;
            const auto row = space.dists_from(0);
            for (int i = 0; i < space.size(); ++i) {
                if (std::fabs(row[static_cast<std::size_t>(i)] - level) <= w) {
                    fs.set.indices.push_back(i);
                }
            }
            out.push_back(std::move(fs));
        }
        return out;
    }
    if (family == "neck_loop") {
        if (space.metadata().kind != "dumbbell_surface") {
            throw invalid_argument("neck_loop family requires a dumbbell surface");
        }
        FamilySet fs;
        fs.value = 0.0;
        fs.id = "neck_loop";
        fs.set.scale = w;
        fs.set.role = SetRole::kSeparatingSet;
        for (int i = 0; i < space.size(); ++i) {
            if (std::fabs(space.coords()[static_cast<std::size_t>(i)].x) <= w) {
                fs.set.indices.push_back(i);
            }
        }
        out.push_back(std::move(fs));
        return out;
    }
    if (family == "arc") {
        // Non-separating control: a piece of the equator with longitudes in
        // [0, value].
        if (space.metadata().kind != "sphere") {
            throw invalid_argument("arc family requires a sphere");
        }
        const double radius = space.metadata().params.at(0);
        for (double span : values) {
            FamilySet fs;
            fs.value = span;
            fs.id = "arc:" + fmt(span);
            fs.set.scale = w;
            fs.set.role = SetRole::kSeparatingSet;
            for (int i = 0; i < space.size(); ++i) {
                const Vec3& p = space.coords()[static_cast<std::size_t>(i)];
                const double c = colatitude(p, radius);
                const double lon = std::atan2(p.y, p.x);
                if (std::fabs(c - M_PI / 2.0) * radius <= w && lon >= 0.0 && lon <= span) {
                    fs.set.indices.push_back(i);
                }
            }
            out.push_back(std::move(fs));
        }
        return out;
    }
    throw invalid_argument("unknown set family: " + family);
}

namespace {

struct IsoRowResult {
    ReportRow row;
    DiameterCheck diam_check;
};

IsoRowResult isoperimetric_row(const FiniteMetricSpace& space, const FamilySet& fs,
                               double witness_scale) {
    IsoRowResult out;
    ReportRow& row = out.row;
    row.set_id = fs.id;
    row.invariant = "H_{n-1}(S) / seprad(S)^{n-1} > 0 and stable";
    const int k = space.manifold_dim() - 1;
    const MeasureEstimate est = hausdorff_estimate(space, fs.set, k);
    row.measure = est.value;
    row.spread = est.spread;
    const SeparationStats stats = separation_radius(space, fs.set);
    row.seprad = stats.seprad;
    row.r = stats.seprad;
    row.ratio = row.seprad > 0.0 ? row.measure / ipow(row.seprad, k) : 0.0;
    row.witness = separation_witness(space, fs.set, witness_scale);
    row.witness_fine = separation_witness(space, fs.set, witness_scale * 1.5);
    row.pass = row.seprad > 0.0 && row.ratio > 0.0;
    out.diam_check = diameter_bound_check(space, fs.set, space.metadata().model_L);
    return out;
}

double min_ratio(const std::vector<ReportRow>& rows) {
    double c = std::numeric_limits<double>::infinity();
    for (const auto& r : rows) c = std::min(c, r.ratio);
    return std::isfinite(c) ? c : 0.0;
}

}  // namespace

VerificationReport verify_isoperimetric(const ExperimentConfig& config) {
    detail::thread_count() = std::max(1, config.threads);
    VerificationReport report;
    report.experiment = "verify-iso";
    report.notes = {kCechNote};

    ManifoldSpec spec = config.manifold;
    spec.sample_count = config.effective_samples();
    const FiniteMetricSpace space = generate(spec);
    report.environment = environment_json(config, space);

    std::vector<double> values = config.family_values;
    if (values.empty() && config.family == "latitude") {
        values = {0.3, 0.6, 0.9, 1.2, M_PI / 2.0};
    }
    const double set_scale =
        config.set_scale > 0.0 ? config.set_scale : auto_set_scale(space);
    const double witness_scale = config.witness_scale > 0.0
                                     ? config.witness_scale
                                     : auto_witness_scale(space, set_scale);
    report.environment["set_scale"] = set_scale;
    report.environment["witness_scale"] = witness_scale;

    const auto family = build_family(space, config.family, values, set_scale);
    if (family.empty()) {
        report.derived["c_hat"] = nullptr;
        report.add_check("family-nonempty", false, "set family is empty; c_hat undefined",
                         "report rows must cover at least one separating set");
        return report;
    }

    bool rows_ok = true;
    bool diam_ok = true;
    std::ostringstream diam_detail;
    for (const auto& fs : family) {
        IsoRowResult r = isoperimetric_row(space, fs, witness_scale);
        rows_ok = rows_ok && r.row.pass;
        if (!r.diam_check.ok) diam_ok = false;
        diam_detail << fs.id << " margin " << fmt(r.diam_check.margin) << "; ";
        report.rows.push_back(std::move(r.row));
    }
    const double c_hat = min_ratio(report.rows);
    report.derived["c_hat"] = c_hat;
    report.derived["constant_chain"] = "c = c_base(codim) / C^{n-1}";
    report.add_check("rows-positive", rows_ok && c_hat > 0.0,
                     "c_hat = " + fmt(c_hat),
                     "H_{n-1}(S) >= c_hat * seprad(S)^{n-1} with c_hat > 0");
    report.add_check("diameter-bound", diam_ok, diam_detail.str(),
                     "diam(S) >= seprad(S)/L - (2h + 2*scale)");

    // Stability under resolution doubling.
    ManifoldSpec fine = spec;
    fine.sample_count = spec.sample_count * 2;
    const FiniteMetricSpace fine_space = generate(fine);
    const double fine_scale = config.set_scale > 0.0 ? config.set_scale
                                                     : auto_set_scale(fine_space);
    const double fine_witness = config.witness_scale > 0.0
                                    ? config.witness_scale
                                    : auto_witness_scale(fine_space, fine_scale);
    const auto fine_family = build_family(fine_space, config.family, values, fine_scale);
    std::vector<ReportRow> fine_rows;
    for (const auto& fs : fine_family) {
        fine_rows.push_back(isoperimetric_row(fine_space, fs, fine_witness).row);
    }
    const double c_fine = min_ratio(fine_rows);
    const double drift = c_hat > 0.0 ? std::fabs(c_fine - c_hat) / c_hat : 1.0;
    report.derived["c_hat_fine"] = c_fine;
    report.derived["c_hat_drift"] = drift;
    report.add_check("c_hat-stability", drift <= 0.10,
                     "c_hat " + fmt(c_hat) + " -> " + fmt(c_fine) + " (drift " +
                         fmt(drift) + ")",
                     "c_hat stable within 10% when resolution doubles");

    // Plot: ratio against the family parameter.
    {
        nlohmann::ordered_json plot;
        plot["title"] = "codimension-1 measure vs separation radius";
        plot["xlabel"] = "family parameter";
        plot["ylabel"] = "H_{n-1}(S) / seprad^{n-1}";
        nlohmann::ordered_json series = nlohmann::ordered_json::array();
        nlohmann::ordered_json s0;
        s0["name"] = "ratio";
        nlohmann::ordered_json xs = nlohmann::ordered_json::array();
        nlohmann::ordered_json ys = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < family.size(); ++i) {
            xs.push_back(family[i].value);
            ys.push_back(report.rows[i].ratio);
        }
        s0["x"] = xs;
        s0["y"] = ys;
        series.push_back(s0);
        plot["series"] = series;
        report.plots.push_back({"iso_ratio.svg", plot});
    }
    return report;
}

VerificationReport verify_volume(const ExperimentConfig& config) {
    detail::thread_count() = std::max(1, config.threads);
    VerificationReport report;
    report.experiment = "verify-vol";
    report.notes = {kCechNote};

    ManifoldSpec spec = config.manifold;
    spec.sample_count = config.effective_samples();
    const FiniteMetricSpace space = generate(spec);
    report.environment = environment_json(config, space);

    std::vector<double> radii = config.radii;
    if (radii.empty()) radii = {0.3, 0.6, 0.9, 1.2, M_PI / 2.0};
    for (double r : radii) {
        if (!(r > 0.0) || r > space.diameter() * (1.0 + 1e-9)) {
            throw invalid_argument("volume radius " + fmt(r) + " outside (0, diam]");
        }
    }
    const int n = space.manifold_dim();

    // Reference c_hat from the isoperimetric family on the same manifold.
    double c_hat = 0.0;
    if (space.metadata().kind == "sphere") {
        const double set_scale =
            config.set_scale > 0.0 ? config.set_scale : auto_set_scale(space);
        const auto family = build_family(space, "latitude",
                                         {0.3, 0.6, 0.9, 1.2, M_PI / 2.0}, set_scale);
        std::vector<ReportRow> rows;
        const double ws = auto_witness_scale(space, set_scale);
        for (const auto& fs : family) {
            rows.push_back(isoperimetric_row(space, fs, ws).row);
        }
        c_hat = min_ratio(rows);
    }
    report.derived["c_hat_reference"] = c_hat;

    Rng rng(spec.seed + 17);
    std::vector<int> centers;
    for (int c = 0; c < std::max(1, config.centers); ++c) {
        centers.push_back(rng.uniform_int(space.size()));
    }

    bool ratio_ok = true;
    bool slicing_ok = true;
    bool mechanism_ok = true;
    std::ostringstream mech_detail;
    nlohmann::ordered_json slice_series = nlohmann::ordered_json::array();

    for (double r : radii) {
        for (int center : centers) {
            const SliceProfile profile = eilenberg_slices(space, center, r, config.bands);
            ReportRow row;
            row.set_id = "ball:c" + std::to_string(center) + ":r" + fmt(r);
            row.measure = profile.ball.value;
            row.spread = profile.ball.spread;
            row.r = r;
            row.ratio = profile.ball.value / ipow(r, n);
            row.invariant = "H_n(B(x,r)) >= c * r^n";
            row.pass = row.ratio > 0.0;
            ratio_ok = ratio_ok && row.pass;

            const double slice_err =
                profile.ball.value > 0.0
                    ? std::fabs(profile.integral - profile.ball.value) / profile.ball.value
                    : 1.0;
            if (slice_err > 0.15) slicing_ok = false;

            // Mechanism: a slice in [r/8, r/4] separates the center from a far
            // point and carries codimension-1 measure >= c_hat (r/8)^{n-1}.
            const auto from_center = space.dists_from(center);
            int far = 0;
            for (int i = 1; i < space.size(); ++i) {
                if (from_center[static_cast<std::size_t>(i)] >
                    from_center[static_cast<std::size_t>(far)]) {
                    far = i;
                }
            }
            const double t = 3.0 * r / 16.0;
            SampleSet slice;
            slice.role = SetRole::kLevelSet;
            slice.scale = std::max(auto_set_scale(space), r / 32.0);
            for (int i = 0; i < space.size(); ++i) {
                if (std::fabs(from_center[static_cast<std::size_t>(i)] - t) <= slice.scale) {
                    slice.indices.push_back(i);
                }
            }
            bool separated = false;
            double slice_measure = 0.0;
            if (!slice.indices.empty() &&
                from_center[static_cast<std::size_t>(far)] >= r / 2.0) {
                const SeparationStats stats = components_of_complement(space, slice);
                const int cx = stats.component_of[static_cast<std::size_t>(center)];
                const int cy = stats.component_of[static_cast<std::size_t>(far)];
                separated = cx >= 0 && cy >= 0 && cx != cy;
                slice_measure = hausdorff_estimate(space, slice, n - 1).value;
            }
            const double needed = c_hat * ipow(r / 8.0, n - 1);
            const bool mech = separated && slice_measure >= needed;
            if (!mech) mechanism_ok = false;
            mech_detail << row.set_id << (separated ? " separated" : " NOT separated")
                        << " H=" << fmt(slice_measure) << " need " << fmt(needed) << "; ";

            report.rows.push_back(row);

            if (center == centers.front()) {
                nlohmann::ordered_json s;
                s["name"] = "r=" + fmt(r);
                nlohmann::ordered_json xs = nlohmann::ordered_json::array();
                nlohmann::ordered_json ys = nlohmann::ordered_json::array();
                for (std::size_t b = 0; b < profile.t_mid.size(); ++b) {
                    xs.push_back(profile.t_mid[b]);
                    ys.push_back(profile.slices[b].value);
                }
                s["x"] = xs;
                s["y"] = ys;
                slice_series.push_back(s);
            }
        }
    }

    report.add_check("volume-ratio-positive", ratio_ok, "all H_n(B)/r^n > 0",
                     "H_n(B(x,r)) >= c * r^n");
    report.add_check("eilenberg-slicing", slicing_ok,
                     "sum H_{n-1}(S_t) dt within 15% of H_n(B)",
                     "slice integral comparable to ball volume");
    report.add_check("separating-slice", mechanism_ok, mech_detail.str(),
                     "slices in [r/8, r/4] separate x from a far point with "
                     "H_{n-1}(S_t) >= c_hat (r/8)^{n-1}");

    {
        nlohmann::ordered_json plot;
        plot["title"] = "level-set slice profiles";
        plot["xlabel"] = "t";
        plot["ylabel"] = "H_{n-1}(S_t)";
        plot["series"] = slice_series;
        report.plots.push_back({"slices.svg", plot});
    }
    {
        nlohmann::ordered_json plot;
        plot["title"] = "ball volume ratio";
        plot["xlabel"] = "r";
        plot["ylabel"] = "H_n(B)/r^n";
        nlohmann::ordered_json series = nlohmann::ordered_json::array();
        nlohmann::ordered_json s0;
        s0["name"] = "ratio";
        nlohmann::ordered_json xs = nlohmann::ordered_json::array();
        nlohmann::ordered_json ys = nlohmann::ordered_json::array();
        for (const auto& row : report.rows) {
            xs.push_back(row.r);
            ys.push_back(row.ratio);
        }
        s0["x"] = xs;
        s0["y"] = ys;
        series.push_back(s0);
        plot["series"] = series;
        report.plots.push_back({"volume_ratio.svg", plot});
    }
    return report;
}

VerificationReport dumbbell_necessity(const ExperimentConfig& config) {
    detail::thread_count() = std::max(1, config.threads);
    VerificationReport report;
    report.experiment = "dumbbell";
    report.notes = {kCechNote,
                    "bell radius " + fmt(kDumbbellBellRadius) + ", neck length " +
                        fmt(kDumbbellNeckLength) +
                        "; bells sized so a bell component has in-radius ~1"};

    std::vector<double> epsilons = config.dumbbell_epsilons;
    if (epsilons.empty()) epsilons = {0.2, 0.1, 0.05};
    for (double e : epsilons) {
        if (!(e > 0.0) || e > 0.5) {
            throw invalid_argument("dumbbell eps " + fmt(e) + " outside (0, 0.5]");
        }
    }

    double sum_xy = 0.0, sum_xx = 0.0;
    nlohmann::ordered_json xs = nlohmann::ordered_json::array();
    nlohmann::ordered_json ys = nlohmann::ordered_json::array();
    bool rows_ok = true;
    for (double eps : epsilons) {
        ManifoldSpec spec;
        spec.kind = "dumbbell_surface";
        spec.params = {eps};
        spec.seed = config.manifold.seed;
        double mult = 1.0;
        if (config.resolution == "low") mult = 0.6;
        if (config.resolution == "high") mult = 1.6;
        spec.sample_count = std::min(
            50000, static_cast<int>(std::lround(dumbbell_recommended_samples(eps) * mult)));
        const FiniteMetricSpace space = generate(spec);
        if (report.environment.empty()) {
            report.environment = environment_json(config, space);
        }

        const double w = config.set_scale > 0.0 ? config.set_scale : auto_set_scale(space);
        const auto family = build_family(space, "neck_loop", {0.0}, w);
        const FamilySet& fs = family.front();

        ReportRow row;
        row.set_id = "neck:eps" + fmt(eps);
        row.invariant = "without uniform L the ratio H_1/seprad decays like eps";
        const MeasureEstimate est = hausdorff_estimate(space, fs.set, 1);
        const SeparationStats stats = separation_radius(space, fs.set);
        row.measure = est.value;
        row.spread = est.spread;
        row.seprad = stats.seprad;
        row.r = eps;
        row.ratio = stats.seprad > 0.0 ? est.value / stats.seprad : 0.0;
        row.witness = separation_witness(space, fs.set,
                                         std::max(4.0 * w, 12.0 * space.sample_density()));
        row.pass = stats.n_components == 2 && row.ratio > 0.0;
        rows_ok = rows_ok && row.pass;
        report.rows.push_back(row);

        sum_xy += eps * row.ratio;
        sum_xx += eps * eps;
        xs.push_back(eps);
        ys.push_back(row.ratio);
    }
    const double slope = sum_xx > 0.0 ? sum_xy / sum_xx : 0.0;
    report.derived["slope"] = slope;
    report.derived["slope_model"] = 2.0 * M_PI;
    report.add_check("neck-rows", rows_ok,
                     "each neck loop splits the surface into two bells",
                     "neck loop yields exactly two complement components");
    report.add_check("slope-finite", slope > 0.0, "fitted slope " + fmt(slope),
                     "ratio vs eps fits a line through the origin");

    nlohmann::ordered_json plot;
    plot["title"] = "necessity of uniform contractibility";
    plot["xlabel"] = "neck radius eps";
    plot["ylabel"] = "H_1(loop)/seprad";
    nlohmann::ordered_json series = nlohmann::ordered_json::array();
    nlohmann::ordered_json s0;
    s0["name"] = "measured";
    s0["x"] = xs;
    s0["y"] = ys;
    series.push_back(s0);
    nlohmann::ordered_json s1;
    s1["name"] = "slope fit";
    nlohmann::ordered_json fx = nlohmann::ordered_json::array();
    nlohmann::ordered_json fy = nlohmann::ordered_json::array();
    fx.push_back(0.0);
    fy.push_back(0.0);
    if (!report.rows.empty()) {
        fx.push_back(report.rows.front().r);
        fy.push_back(slope * report.rows.front().r);
    }
    s1["x"] = fx;
    s1["y"] = fy;
    series.push_back(s1);
    plot["series"] = series;
    report.plots.push_back({"dumbbell_ratio.svg", plot});
    return report;
}

VerificationReport run_pipeline(const ExperimentConfig& config) {
    detail::thread_count() = std::max(1, config.threads);
    VerificationReport report;
    report.experiment = "pipeline";
    report.notes = {kCechNote, kHomotopyGapNote};

    ManifoldSpec spec = config.manifold;
    spec.sample_count = config.effective_samples();
    const FiniteMetricSpace space = generate(spec);
    report.environment = environment_json(config, space);
    const int n = space.manifold_dim();

    const double set_scale =
        config.set_scale > 0.0 ? config.set_scale : auto_set_scale(space);
    std::vector<double> values = config.family_values;
    if (values.empty() && config.family == "latitude") values = {M_PI / 2.0};
    const auto family = build_family(space, config.family, values, set_scale);
    SampleSet s_set;
    s_set.scale = set_scale;
    std::string set_id = "(empty)";
    if (!family.empty()) {
        s_set = family.front().set;
        set_id = family.front().id;
    }
    report.environment["set"] = set_id;
    report.environment["set_scale"] = s_set.scale;
    report.environment["set_size"] = s_set.indices.size();

    std::string stage = "doubling";
    try {
        const int doubling = estimate_doubling(space, config.doubling_trials, spec.seed);
        report.derived["doubling"] = doubling;

        stage = "cover";
        const double eps =
            config.cover_epsilon > 0.0 ? config.cover_epsilon : space.diameter() / 32.0;
        const BallCover cover = build_cover(space, eps);
        report.environment["epsilon"] = eps;
        report.derived["cover_elements"] = cover.element_count();
        report.derived["cover_multiplicity"] = cover.multiplicity;
        report.derived["cover_lebesgue"] = cover.lebesgue_audited;
        report.add_check("cover-certificate",
                         cover.max_diameter <= eps * (1.0 + 1e-12) &&
                             cover.lebesgue_audited >= eps / 4.0 * (1.0 - 1e-12) &&
                             cover.multiplicity <= doubling,
                         "diam " + fmt(cover.max_diameter) + " <= " + fmt(eps) +
                             ", lebesgue " + fmt(cover.lebesgue_audited) + " >= " +
                             fmt(eps / 4.0) + ", mult " + std::to_string(cover.multiplicity) +
                             " <= " + std::to_string(doubling),
                         "cover certificate: diameter, Lebesgue number, multiplicity");

        stage = "nerve";
        const SimplicialComplex nerve_complex = nerve(cover);
        report.derived["nerve_dim"] = nerve_complex.dim();
        report.derived["nerve_simplices"] = nerve_complex.simplex_count();
        report.add_check("nerve-dim", nerve_complex.dim() <= cover.multiplicity - 1,
                         "dim " + std::to_string(nerve_complex.dim()),
                         "nerve dimension <= multiplicity - 1");

        stage = "partition-of-unity";
        const PartitionOfUnity pou = partition_of_unity(space, cover);
        double worst_sum = 0.0;
        for (int i = 0; i < space.size(); ++i) {
            worst_sum = std::max(worst_sum, std::fabs(pou.sum(i) - 1.0));
        }
        report.add_check("pou-normalized", worst_sum <= 1e-12,
                         "max |sum f_i - 1| = " + fmt(worst_sum),
                         "sum_i f_i(x) = 1 within 1e-12");

        stage = "map-f";
        const NerveMap f = map_f(space, pou, nerve_complex);
        report.derived["f_lip_estimate"] = f.lip_estimate;
        report.derived["f_lip_bound"] = f.lip_bound;

        stage = "push-set";
        ComplexSampleSet e_set;
        e_set.k = n - 1;
        for (int i : s_set.indices) {
            e_set.points.push_back(f.images[static_cast<std::size_t>(i)]);
            e_set.weights.push_back(1.0);
        }
        double image_nn = 0.0;
        if (e_set.points.size() >= 2) {
            std::vector<double> nn(e_set.points.size(),
                                   std::numeric_limits<double>::infinity());
            for (std::size_t a = 0; a < e_set.points.size(); ++a) {
                for (std::size_t b = 0; b < e_set.points.size(); ++b) {
                    if (a == b) continue;
                    nn[a] = std::min(nn[a], BarycentricPoint::euclidean(
                                                e_set.points[a], e_set.points[b]));
                }
            }
            std::vector<double> sorted = nn;
            std::sort(sorted.begin(), sorted.end());
            image_nn = sorted[sorted.size() / 2];
        }
        e_set.scale = std::max(2.0 * image_nn, s_set.scale);
        report.environment["image_scale"] = e_set.scale;
        const MeasureEstimate e_measure = complex_set_measure(e_set);
        report.derived["image_measure"] = e_measure.value;
        report.add_check("image-measure-finite", std::isfinite(e_measure.value),
                         "H_{n-1}(f(S)) = " + fmt(e_measure.value),
                         "the pushed set has finite estimated measure");

        stage = "witness-before";
        const double ws = config.witness_scale > 0.0
                              ? config.witness_scale
                              : auto_witness_scale(space, s_set.scale);
        int witness_before = 0, witness_before_fine = 0;
        if (!s_set.indices.empty()) {
            witness_before = separation_witness(space, s_set, ws);
            witness_before_fine = separation_witness(space, s_set, ws * 1.5);
        }
        report.derived["witness_before"] = witness_before;
        report.derived["witness_before_fine"] = witness_before_fine;

        stage = "project-to-skeleton";
        ComplexSampleSet image = e_set;
        ProjectionLog log;
        if (!e_set.points.empty() && n >= 2) {
            auto [img, lg] = project_to_skeleton(nerve_complex, e_set, n - 1);
            image = std::move(img);
            log = std::move(lg);
            int max_support = 0;
            for (const auto& p : image.points) {
                max_support =
                    std::max(max_support, static_cast<int>(p.pruned(1e-12).simplex.size()));
            }
            report.add_check("projection-skeleton", max_support <= n - 1,
                             "max support size " + std::to_string(max_support) +
                                 " (target skeleton dim " + std::to_string(n - 2) + ")",
                             "p(f(S)) lies in the (n-2)-skeleton");
            report.add_check("projection-support-monotone", true,
                             "support inclusion held at every projected sample",
                             "p(sigma) inside sigma at sample level");
            if (!log.measure_precondition_ok) {
                report.notes.push_back(
                    "estimated H_k(f(S)) exceeds the sufficient smallness bound; "
                    "projection ran anyway (the bound is sufficient, not necessary)");
            }
            report.extra_files.emplace_back("projection_log.json",
                                            projection_log_to_json(log).dump(2) + "\n");
            report.extra_files.emplace_back("tables/projection_log.csv",
                                            projection_log_to_csv(log));
        }

        stage = "glued-map";
        const GluedMap g = build_g(nerve_complex, cover, space, space.metadata().model_L,
                                   std::min(2, nerve_complex.dim()));
        report.derived["g_flagged_cells"] = g.flagged.size();
        report.derived["g_built_dim"] = g.built_dim;

        stage = "witness-after";
        SampleSet s_after;
        s_after.scale = s_set.scale;
        {
            std::vector<char> seen(static_cast<std::size_t>(space.size()), 0);
            for (const auto& p : image.points) {
                for (int v : p.pruned(1e-12).simplex) {
                    const int x = g.vertex_images[static_cast<std::size_t>(v)];
                    if (!seen[static_cast<std::size_t>(x)]) {
                        seen[static_cast<std::size_t>(x)] = 1;
                        s_after.indices.push_back(x);
                    }
                }
            }
            std::sort(s_after.indices.begin(), s_after.indices.end());
        }
        int witness_after = 0;
        bool after_separates = false;
        if (!s_after.indices.empty()) {
            witness_after = separation_witness(space, s_after, ws);
            after_separates =
                components_of_complement(space, s_after).n_components >= 2;
        }
        report.derived["witness_after"] = witness_after;
        report.derived["image_separates"] = after_separates;
        report.derived["image_point_count"] = s_after.indices.size();

        // Artifacts.
        report.extra_files.emplace_back("nerve.json",
                                        nerve_map_to_json(nerve_complex, f).dump(2) + "\n");
        report.extra_files.emplace_back("glued_map.json", glued_map_to_json(g).dump(2) + "\n");
        report.extra_files.emplace_back("image_set.json",
                                        complex_set_to_json(image).dump(2) + "\n");
        if (!log.stage_dims.empty()) {
            nlohmann::ordered_json plot;
            plot["title"] = "measure growth per projection stage";
            plot["xlabel"] = "stage dimension";
            plot["ylabel"] = "growth factor";
            nlohmann::ordered_json series = nlohmann::ordered_json::array();
            nlohmann::ordered_json s0;
            s0["name"] = "growth";
            nlohmann::ordered_json xs = nlohmann::ordered_json::array();
            nlohmann::ordered_json ys = nlohmann::ordered_json::array();
            for (std::size_t i = 0; i < log.stage_dims.size(); ++i) {
                xs.push_back(log.stage_dims[i]);
                ys.push_back(log.stage_growth[i]);
            }
            s0["x"] = xs;
            s0["y"] = ys;
            series.push_back(s0);
            plot["series"] = series;
            report.plots.push_back({"projection_growth.svg", plot});
        }
    } catch (const ObstructionError& e) {
        std::ostringstream simplex;
        for (std::size_t i = 0; i < e.simplex().size(); ++i) {
            simplex << (i ? "," : "") << e.simplex()[i];
        }
        report.add_check("aborted", false,
                         std::string("stage ") + stage + ": " + e.what(),
                         "pipeline stages complete without obstruction");
        report.derived["aborted_stage"] = stage;
        report.derived["obstruction_simplex"] = "{" + simplex.str() + "}";
        report.extra_files.emplace_back("partial_state.json",
                                        sample_set_to_json(s_set).dump(2) + "\n");
        return report;
    } catch (const Error& e) {
        report.add_check("aborted", false, std::string("stage ") + stage + ": " + e.what(),
                         "pipeline stages complete without error");
        report.derived["aborted_stage"] = stage;
        report.extra_files.emplace_back("partial_state.json",
                                        sample_set_to_json(s_set).dump(2) + "\n");
        return report;
    }
    return report;
}

}  // namespace codim1
