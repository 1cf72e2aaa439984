#include "codim1/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "codim1/errors.hpp"

namespace codim1 {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Calibration of count * (2s)^k against the analytic measure of flat models.
// k = 1: frontier marching advances one radius per ball on a segment, so a
// unit segment yields count ~ 1/s and nu_1 = 1/2 reports length 1.
// k = 2: measured on uniform samples of flat tori (see tests), the marching
// cover settles at ~4.4 balls per (2s)^2 of area.
constexpr double kNu1 = 0.5;
constexpr double kNu2 = 0.2273;

double nu(int k) {
    if (k == 1) return kNu1;
    if (k == 2) return kNu2;
    double v = 1.0;
    for (int i = 0; i < k; ++i) v *= 0.5;  // uncalibrated fallback
    return v;
}

double ipow(double x, int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) v *= x;
    return v;
}

// Number of balls of radius s in a greedy marching cover: starting from the
// first point, repeatedly cover the uncovered point nearest to the chosen
// centers. Deterministic and scale-equivariant.
int marching_cover_count(int count,
                         const std::function<std::vector<double>(int)>& dists_from,
                         double s) {
    std::vector<double> mind(static_cast<std::size_t>(count), kInf);
    int centers = 0;
    int next = 0;
    while (next >= 0) {
        ++centers;
        const std::vector<double> row = dists_from(next);
        for (int i = 0; i < count; ++i) {
            if (row[static_cast<std::size_t>(i)] < mind[static_cast<std::size_t>(i)]) {
                mind[static_cast<std::size_t>(i)] = row[static_cast<std::size_t>(i)];
            }
        }
        next = -1;
        double best = kInf;
        for (int i = 0; i < count; ++i) {
            const double d = mind[static_cast<std::size_t>(i)];
            if (d > s && d < best) {
                best = d;
                next = i;
            }
        }
    }
    return centers;
}

}  // namespace

MeasureEstimate covering_measure(int count,
                                 const std::function<std::vector<double>(int)>& dists_from,
                                 double scale, int k) {
    MeasureEstimate est;
    est.k = k;
    est.scale = scale;
    if (count <= 0) return est;
    if (k == 0) {
        est.value = count;
        est.method = "count";
        est.per_scale = {est.value, est.value, est.value};
        return est;
    }
    const double radii[3] = {scale, scale * M_SQRT2, scale * 2.0};
    for (int i = 0; i < 3; ++i) {
        const int c = marching_cover_count(count, dists_from, radii[i]);
        est.per_scale[static_cast<std::size_t>(i)] = nu(k) * c * ipow(2.0 * radii[i], k);
    }
    std::array<double, 3> sorted = est.per_scale;
    std::sort(sorted.begin(), sorted.end());
    est.value = sorted[1];
    est.spread = sorted[2] - sorted[0];
    return est;
}

MeasureEstimate hausdorff_estimate(const FiniteMetricSpace& space, const SampleSet& set,
                                   int k) {
    if (k < 0) throw invalid_argument("measure dimension must be >= 0");
    if (set.indices.empty()) {
        MeasureEstimate est;
        est.k = k;
        return est;
    }
    for (int i : set.indices) {
        if (i < 0 || i >= space.size()) throw invalid_argument("set index out of range");
    }
    if (k >= 1 && set.scale < space.sample_density()) {
        std::ostringstream msg;
        msg << "estimator scale " << set.scale << " is below the sampling density "
            << space.sample_density();
        throw invalid_argument(msg.str());
    }
    const auto& idx = set.indices;
    const int m = static_cast<int>(idx.size());
    auto dists = [&](int a) {
        const std::vector<double> row = space.dists_from(idx[static_cast<std::size_t>(a)]);
        std::vector<double> sub(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) {
            sub[static_cast<std::size_t>(i)] = row[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        }
        return sub;
    };
    MeasureEstimate est = covering_measure(m, dists, set.scale, k);
    est.scale = set.scale;
    return est;
}

SeparationStats components_of_complement(const FiniteMetricSpace& space,
                                         const SampleSet& set) {
    SeparationStats stats;
    stats.band_scale = set.scale;
    stats.dist_to_set = space.dists_to_set(set.indices);
    const int n = space.size();
    stats.component_of.assign(static_cast<std::size_t>(n), -1);

    std::vector<char> removed(static_cast<std::size_t>(n), 0);
    if (!set.indices.empty()) {
        for (int i = 0; i < n; ++i) {
            if (stats.dist_to_set[static_cast<std::size_t>(i)] <= set.scale) {
                removed[static_cast<std::size_t>(i)] = 1;
            }
        }
    }

    const NeighborGraph& g = space.graph();
    std::vector<int> stack;
    int next = 0;
    for (int i = 0; i < n; ++i) {
        if (removed[static_cast<std::size_t>(i)] || stats.component_of[static_cast<std::size_t>(i)] != -1) {
            continue;
        }
        stats.component_of[static_cast<std::size_t>(i)] = next;
        stack.push_back(i);
        stats.components.emplace_back();
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            stats.components.back().push_back(u);
            for (int e = g.offsets[u]; e < g.offsets[u + 1]; ++e) {
                const int v = g.targets[static_cast<std::size_t>(e)];
                if (!removed[static_cast<std::size_t>(v)] &&
                    stats.component_of[static_cast<std::size_t>(v)] == -1) {
                    stats.component_of[static_cast<std::size_t>(v)] = next;
                    stack.push_back(v);
                }
            }
        }
        std::sort(stats.components.back().begin(), stats.components.back().end());
        ++next;
    }
    stats.n_components = next;
    return stats;
}

double inradius(const FiniteMetricSpace& space, const std::vector<int>& component,
                const SampleSet& set, const std::vector<double>& dist_to_set) {
    if (component.empty()) return 0.0;
    if (set.indices.empty()) return space.diameter();  // dist(x, empty) = diam
    double best = 0.0;
    for (int i : component) {
        best = std::max(best, dist_to_set[static_cast<std::size_t>(i)]);
    }
    return best + set.scale;
}

SeparationStats separation_radius(const FiniteMetricSpace& space, const SampleSet& set) {
    SeparationStats stats = components_of_complement(space, set);
    stats.inradii.resize(static_cast<std::size_t>(stats.n_components), 0.0);
    stats.deep_points.resize(static_cast<std::size_t>(stats.n_components), -1);
    for (int c = 0; c < stats.n_components; ++c) {
        const auto& comp = stats.components[static_cast<std::size_t>(c)];
        if (set.indices.empty()) {
            stats.inradii[static_cast<std::size_t>(c)] = space.diameter();
            stats.deep_points[static_cast<std::size_t>(c)] = comp.empty() ? -1 : comp[0];
            continue;
        }
        double best = -1.0;
        int arg = -1;
        for (int i : comp) {
            const double d = stats.dist_to_set[static_cast<std::size_t>(i)];
            if (d > best) {
                best = d;
                arg = i;
            }
        }
        stats.inradii[static_cast<std::size_t>(c)] = best + set.scale;
        stats.deep_points[static_cast<std::size_t>(c)] = arg;
    }
    if (stats.n_components >= 2) {
        // seprad = max over pairs of min(inrad_U, inrad_V) = second largest.
        int first = 0, second = -1;
        for (int c = 1; c < stats.n_components; ++c) {
            if (stats.inradii[static_cast<std::size_t>(c)] >
                stats.inradii[static_cast<std::size_t>(first)]) {
                second = first;
                first = c;
            } else if (second < 0 || stats.inradii[static_cast<std::size_t>(c)] >
                                         stats.inradii[static_cast<std::size_t>(second)]) {
                second = c;
            }
        }
        stats.seprad = stats.inradii[static_cast<std::size_t>(second)];
        stats.witness_x = stats.deep_points[static_cast<std::size_t>(first)];
        stats.witness_y = stats.deep_points[static_cast<std::size_t>(second)];
    }
    return stats;
}

double set_diameter(const FiniteMetricSpace& space, const SampleSet& set) {
    double best = 0.0;
    const auto& idx = set.indices;
    if (space.metric_model() == MetricModel::kAnalytic) {
        for (std::size_t a = 0; a < idx.size(); ++a) {
            for (std::size_t b = a + 1; b < idx.size(); ++b) {
                best = std::max(best, space.dist(idx[a], idx[b]));
            }
        }
        return best;
    }
    for (std::size_t a = 0; a < idx.size(); ++a) {
        const auto row = space.dists_from(idx[a]);
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            best = std::max(best, row[static_cast<std::size_t>(idx[b])]);
        }
    }
    return best;
}

DiameterCheck diameter_bound_check(const FiniteMetricSpace& space, const SampleSet& set,
                                   double L) {
    if (!(L > 0.0)) throw invalid_argument("contractibility constant must be > 0");
    DiameterCheck check;
    check.diam = set_diameter(space, set);
    check.seprad = separation_radius(space, set).seprad;
    check.tolerance = 2.0 * space.graph_scale() + 2.0 * set.scale;
    check.lower_bound = check.seprad / L - check.tolerance;
    check.margin = check.diam - check.lower_bound;
    check.ok = check.margin >= 0.0;
    return check;
}

SliceProfile eilenberg_slices(const FiniteMetricSpace& space, int center, double r,
                              int bands) {
    if (center < 0 || center >= space.size()) throw invalid_argument("center out of range");
    if (!(r > 0.0) || r > space.diameter() * (1.0 + 1e-9)) {
        throw invalid_argument("slice radius must lie in (0, diam]");
    }
    if (bands < 4) throw invalid_argument("need at least 4 bands");

    SliceProfile profile;
    profile.band_width = r / bands;
    const std::vector<double> row = space.dists_from(center);
    const int k_slice = space.manifold_dim() - 1;
    const double density = space.sample_density();

    std::vector<int> ball_indices;
    for (int i = 0; i < space.size(); ++i) {
        if (row[static_cast<std::size_t>(i)] <= r) ball_indices.push_back(i);
    }

    for (int b = 0; b < bands; ++b) {
        const double lo = b * profile.band_width;
        const double hi = lo + profile.band_width;
        SampleSet band;
        band.role = SetRole::kLevelSet;
        band.scale = std::max(profile.band_width / 2.0, 1.5 * density);
        for (int i : ball_indices) {
            const double d = row[static_cast<std::size_t>(i)];
            if (d >= lo && d < hi) band.indices.push_back(i);
        }
        profile.t_mid.push_back(lo + profile.band_width / 2.0);
        MeasureEstimate est;
        if (band.indices.size() >= 2) {
            est = hausdorff_estimate(space, band, k_slice);
        } else {
            est.k = k_slice;
        }
        profile.integral += est.value * profile.band_width;
        profile.slices.push_back(std::move(est));
    }

    SampleSet ball;
    ball.role = SetRole::kRegion;
    ball.indices = std::move(ball_indices);
    ball.scale = std::max(2.0 * density, r / 12.0);
    if (ball.indices.size() >= 2) {
        profile.ball = hausdorff_estimate(space, ball, space.manifold_dim());
    } else {
        profile.ball.k = space.manifold_dim();
    }
    profile.ratio = profile.ball.value > 0.0 ? profile.integral / profile.ball.value : 0.0;
    return profile;
}

}  // namespace codim1
