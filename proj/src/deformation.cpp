#include "codim1/deformation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "codim1/errors.hpp"

namespace codim1 {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool support_subset(const Simplex& inner, const Simplex& outer) {
    return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

// Coordinates of `p` in the frame of `simplex` (zero-padded faces).
std::vector<double> padded_coords(const BarycentricPoint& p, const Simplex& simplex) {
    std::vector<double> out(simplex.size(), 0.0);
    std::size_t j = 0;
    for (std::size_t i = 0; i < simplex.size(); ++i) {
        if (j < p.simplex.size() && p.simplex[j] == simplex[i]) {
            out[i] = p.coords[j];
            ++j;
        }
    }
    if (j != p.simplex.size()) throw invalid_argument("point does not lie in the simplex");
    return out;
}

}  // namespace

double standard_simplex_volume(int k) {
    // vol = sqrt(k+1) / k!
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return std::sqrt(static_cast<double>(k) + 1.0) / f;
}

MeasureEstimate complex_set_measure(const ComplexSampleSet& set) {
    const int m = static_cast<int>(set.points.size());
    auto dists = [&](int a) {
        std::vector<double> row(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) {
            row[static_cast<std::size_t>(i)] = BarycentricPoint::euclidean(
                set.points[static_cast<std::size_t>(a)], set.points[static_cast<std::size_t>(i)]);
        }
        return row;
    };
    return covering_measure(m, dists, set.scale, set.k);
}

BarycentricPoint radial_project(const BarycentricPoint& center, const BarycentricPoint& x) {
    if (center.simplex != x.simplex) {
        throw invalid_argument("radial projection: center and point in different frames");
    }
    const std::size_t m = x.coords.size();
    // Boundary points are fixed by the projection.
    for (double c : x.coords) {
        if (c == 0.0) return x;
    }
    double t = kInf;
    bool distinct = false;
    std::vector<double> ratio(m, kInf);
    for (std::size_t i = 0; i < m; ++i) {
        const double diff = center.coords[i] - x.coords[i];
        if (diff != 0.0) distinct = true;
        if (diff > 0.0) {
            ratio[i] = center.coords[i] / diff;
            t = std::min(t, ratio[i]);
        }
    }
    if (!distinct) throw invalid_argument("radial projection undefined at the center");
    if (!std::isfinite(t)) {
        throw internal_error("radial projection found no exit face");
    }
    BarycentricPoint out;
    out.simplex = x.simplex;
    out.coords.resize(m);
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        // Coordinates whose ray parameter realizes t exit exactly here.
        double c = (ratio[i] <= t * (1.0 + 1e-14))
                       ? 0.0
                       : center.coords[i] + t * (x.coords[i] - center.coords[i]);
        if (c < 0.0) c = 0.0;
        out.coords[i] = c;
        sum += c;
    }
    if (!(sum > 0.0)) throw internal_error("radial projection collapsed to zero");
    for (double& c : out.coords) c /= sum;
    return out;
}

BarycentricPoint select_center(const std::vector<BarycentricPoint>& samples,
                               const std::vector<double>& weights, const Simplex& simplex,
                               int k, double scale, int subdivisions) {
    const int n_vertices = static_cast<int>(simplex.size());
    if (n_vertices < 2) throw invalid_argument("center selection needs dimension >= 1");

    std::vector<std::vector<double>> sample_coords;
    sample_coords.reserve(samples.size());
    for (const auto& p : samples) sample_coords.push_back(padded_coords(p, simplex));

    const double b = 1.0 / n_vertices;  // barycenter coordinate

    // Barycentric lattice of the middle simplex: midpoints between the
    // barycenter and the lattice of the full simplex.
    auto run_grid = [&](int subdiv, BarycentricPoint* best_out) -> bool {
        std::vector<int> comp(static_cast<std::size_t>(n_vertices), 0);
        comp[0] = subdiv;
        double best_energy = kInf;
        bool found = false;
        std::vector<double> y(static_cast<std::size_t>(n_vertices));
        while (true) {
            for (int i = 0; i < n_vertices; ++i) {
                y[static_cast<std::size_t>(i)] =
                    0.5 * (b + static_cast<double>(comp[static_cast<std::size_t>(i)]) / subdiv);
            }
            bool excluded = false;
            double energy = 0.0;
            for (std::size_t s = 0; s < sample_coords.size(); ++s) {
                double sq = 0.0;
                for (int i = 0; i < n_vertices; ++i) {
                    const double d = sample_coords[s][static_cast<std::size_t>(i)] -
                                     y[static_cast<std::size_t>(i)];
                    sq += d * d;
                }
                const double dist = std::sqrt(sq);
                if (dist <= scale) {
                    excluded = true;
                    break;
                }
                double inv = 1.0;
                for (int p = 0; p < k; ++p) inv /= dist;
                energy += (weights.empty() ? 1.0 : weights[s]) * inv;
            }
            if (!excluded && energy < best_energy) {
                best_energy = energy;
                best_out->simplex = simplex;
                best_out->coords = y;
                found = true;
            }
            // Next composition of `subdiv` into n_vertices parts.
            int i = n_vertices - 2;
            while (i >= 0 && comp[static_cast<std::size_t>(i)] == 0) --i;
            if (i < 0) break;
            --comp[static_cast<std::size_t>(i)];
            int rest = subdiv;
            for (int j2 = 0; j2 <= i; ++j2) rest -= comp[static_cast<std::size_t>(j2)];
            comp[static_cast<std::size_t>(i + 1)] = rest;
            for (int j2 = i + 2; j2 < n_vertices; ++j2) comp[static_cast<std::size_t>(j2)] = 0;
        }
        return found;
    };

    if (samples.empty()) {
        BarycentricPoint out;
        out.simplex = simplex;
        out.coords.assign(static_cast<std::size_t>(n_vertices), b);
        return out;
    }
    BarycentricPoint best;
    if (run_grid(subdivisions, &best)) return best;
    if (run_grid(2 * subdivisions, &best)) return best;
    std::ostringstream msg;
    msg << "simplex {";
    for (std::size_t i = 0; i < simplex.size(); ++i) {
        msg << (i ? "," : "") << simplex[i];
    }
    msg << "} is fully covered by the set at resolution " << scale
        << "; no projection center exists";
    throw ObstructionError(simplex, msg.str());
}

std::pair<ComplexSampleSet, double> project_simplex(const ComplexSampleSet& set,
                                                    const Simplex& simplex,
                                                    const BarycentricPoint& center) {
    ComplexSampleSet out = set;
    const MeasureEstimate before = complex_set_measure(set);
    for (std::size_t i = 0; i < out.points.size(); ++i) {
        BarycentricPoint& p = out.points[i];
        const BarycentricPoint pruned = p.pruned();
        // Only samples interior to this simplex move; boundary samples and
        // samples of other cells stay put.
        if (pruned.simplex != simplex) continue;
        BarycentricPoint padded;
        padded.simplex = simplex;
        padded.coords = padded_coords(pruned, simplex);
        BarycentricPoint image = radial_project(center, padded);
        if (!support_subset(image.pruned().simplex, p.pruned().simplex)) {
            throw internal_error("projection grew a barycentric support");
        }
        p = std::move(image);
    }
    const MeasureEstimate after = complex_set_measure(out);
    const double growth = before.value > 0.0 ? after.value / before.value : 1.0;
    return {std::move(out), growth};
}

std::pair<ComplexSampleSet, ProjectionLog> project_to_skeleton(
    const SimplicialComplex& complex, const ComplexSampleSet& set, int k) {
    if (k < 1) throw invalid_argument("target dimension must be >= 1");
    ProjectionLog log;
    ComplexSampleSet current = set;
    if (current.weights.empty()) {
        current.weights.assign(current.points.size(), 1.0);
    }
    for (const auto& p : current.points) {
        p.validate();
        if (!complex.contains(p.simplex)) {
            throw invalid_argument("sample support is not a simplex of the complex");
        }
    }

    log.initial_measure = complex_set_measure(current).value;
    const int dim = complex.dim();

    // Constants table: base case value and the recursion driven by the
    // measured per-stage growth factors.
    const double c_base = standard_simplex_volume(k) / 2.0;
    log.measure_precondition_ok = true;

    for (int d = dim; d >= k; --d) {
        // Group samples by support tuple; only full-dimensional supports of
        // this stage move.
        std::map<Simplex, std::vector<std::size_t>> groups;
        for (std::size_t i = 0; i < current.points.size(); ++i) {
            const BarycentricPoint p = current.points[i].pruned();
            if (static_cast<int>(p.simplex.size()) == d + 1) {
                groups[p.simplex].push_back(i);
            }
        }
        if (groups.empty()) continue;

        const double before = complex_set_measure(current).value;
        int stage_moved = 0;
        for (const auto& [tuple, idxs] : groups) {
            if (!complex.contains(tuple)) {
                throw invalid_argument("sample support is not a simplex of the complex");
            }
            std::vector<BarycentricPoint> group_pts;
            std::vector<double> group_w;
            for (std::size_t i : idxs) {
                group_pts.push_back(current.points[i].pruned());
                group_w.push_back(current.weights[i]);
            }
            ComplexSampleSet group_set;
            group_set.points = group_pts;
            group_set.weights = group_w;
            group_set.k = current.k;
            group_set.scale = current.scale;
            const double g_before = complex_set_measure(group_set).value;

            const BarycentricPoint center =
                select_center(group_pts, group_w, tuple, current.k, current.scale);

            SimplexStage stage;
            stage.stage_dim = d;
            stage.simplex = tuple;
            stage.center = center;
            for (std::size_t i : idxs) {
                BarycentricPoint padded;
                padded.simplex = tuple;
                padded.coords = padded_coords(current.points[i], tuple);
                BarycentricPoint image = radial_project(center, padded).pruned();
                if (!support_subset(image.simplex, current.points[i].pruned().simplex)) {
                    throw internal_error("projection grew a barycentric support");
                }
                current.points[i] = std::move(image);
                ++stage.moved_points;
            }
            stage_moved += stage.moved_points;
            group_set.points.clear();
            group_set.weights.clear();
            for (std::size_t i : idxs) {
                group_set.points.push_back(current.points[i]);
                group_set.weights.push_back(current.weights[i]);
            }
            stage.measure_before = g_before;
            stage.measure_after = complex_set_measure(group_set).value;
            stage.growth = g_before > 0.0 ? stage.measure_after / g_before : 1.0;
            log.per_simplex.push_back(std::move(stage));
        }
        const double after = complex_set_measure(current).value;
        log.stage_dims.push_back(d);
        log.stage_measure_before.push_back(before);
        log.stage_measure_after.push_back(after);
        log.stage_growth.push_back(before > 0.0 ? after / before : 1.0);
        (void)stage_moved;
    }

    log.final_measure = complex_set_measure(current).value;
    log.cumulative_growth =
        log.initial_measure > 0.0 ? log.final_measure / log.initial_measure : 1.0;

    // Constants: c_{k,k} is the base case; each extra dimension divides by the
    // measured stage growth (standing in for the universal constant).
    double c_running = c_base;
    for (int n = k; n <= dim; ++n) {
        ConstantRow row;
        row.k = k;
        row.n = n;
        row.base = c_base;
        if (n == k) {
            row.formula = "c_base(dim " + std::to_string(k) + ")";
            row.empirical = c_base;
        } else {
            row.formula = "c_prev / C_" + std::to_string(n);
            double growth = 1.0;
            for (std::size_t s = 0; s < log.stage_dims.size(); ++s) {
                if (log.stage_dims[s] == n) growth = std::max(1.0, log.stage_growth[s]);
            }
            c_running = c_running / growth;
            row.empirical = c_running;
        }
        log.constants.push_back(row);
    }
    if (log.initial_measure > log.constants.back().empirical) {
        log.measure_precondition_ok = false;  // sufficient, not necessary
    }

    return {std::move(current), std::move(log)};
}

}  // namespace codim1
