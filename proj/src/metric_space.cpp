#include "codim1/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>

#include "codim1/errors.hpp"
#include "internal/parallel.hpp"
#include "internal/rng.hpp"

namespace codim1 {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double chord(const Vec3& a, const Vec3& b) {
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double wrap_abs(double d, double period) {
    d = std::fabs(d);
    return std::min(d, period - d);
}

}  // namespace

double FiniteMetricSpace::raw_dist(int i, int j) const {
    if (i == j) return 0.0;
    // Keep the evaluation symmetric so dist(i,j) == dist(j,i) bit-for-bit.
    if (i > j) std::swap(i, j);
    const Vec3& a = coords_[static_cast<std::size_t>(i)];
    const Vec3& b = coords_[static_cast<std::size_t>(j)];
    switch (form_) {
        case AnalyticForm::kEuclidean:
            return chord(a, b);
        case AnalyticForm::kLine:
            return std::fabs(a.x - b.x);
        case AnalyticForm::kCircleArc: {
            const double r = meta_.params.at(0);
            const double ang = wrap_abs(a.z - b.z, 2.0 * M_PI);  // z stores the angle
            return r * ang;
        }
        case AnalyticForm::kSphereArc: {
            const double r = meta_.params.at(0);
            // atan2 form: accurate near 0 and pi, monotone in the chord.
            const double dot = a.x * b.x + a.y * b.y + a.z * b.z;
            const double cx = a.y * b.z - a.z * b.y;
            const double cy = a.z * b.x - a.x * b.z;
            const double cz = a.x * b.y - a.y * b.x;
            const double cross = std::sqrt(cx * cx + cy * cy + cz * cz);
            return r * std::atan2(cross, dot);
        }
        case AnalyticForm::kFlatTorus: {
            const double sa = meta_.params.at(0), sb = meta_.params.at(1);
            const double dx = wrap_abs(a.x - b.x, sa);
            const double dy = wrap_abs(a.y - b.y, sb);
            return std::sqrt(dx * dx + dy * dy);
        }
    }
    return 0.0;
}

double FiniteMetricSpace::dist(int i, int j) const {
    if (i < 0 || j < 0 || i >= size() || j >= size()) {
        throw invalid_argument("point index out of range");
    }
    if (model_ == MetricModel::kAnalytic) return raw_dist(i, j) * scale_;
    if (i == j) return 0.0;
    if (i > j) std::swap(i, j);
    return dists_from(i)[static_cast<std::size_t>(j)];
}

std::vector<double> FiniteMetricSpace::dists_from(int i) const {
    if (i < 0 || i >= size()) throw invalid_argument("point index out of range");
    if (model_ == MetricModel::kAnalytic) {
        std::vector<double> row(static_cast<std::size_t>(size()));
        detail::parallel_for(size(), [&](int lo, int hi) {
            for (int j = lo; j < hi; ++j) {
                row[static_cast<std::size_t>(j)] = raw_dist(i, j) * scale_;
            }
        });
        return row;
    }
    {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        auto it = cache_->rows.find(i);
        if (it != cache_->rows.end()) return *it->second;
    }
    std::vector<double> row = graph_dists_from(i);
    {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        if (cache_->rows.size() >= 128) {
            cache_->rows.erase(cache_->order.front());
            cache_->order.erase(cache_->order.begin());
        }
        cache_->rows.emplace(i, std::make_shared<const std::vector<double>>(row));
        cache_->order.push_back(i);
    }
    return row;
}

std::vector<double> FiniteMetricSpace::dists_to_set(std::span<const int> sources,
                                                    double cutoff) const {
    std::vector<double> out(static_cast<std::size_t>(size()), kInf);
    if (sources.empty()) return out;
    if (model_ == MetricModel::kAnalytic) {
        detail::parallel_for(size(), [&](int lo, int hi) {
            for (int j = lo; j < hi; ++j) {
                double best = kInf;
                for (int s : sources) best = std::min(best, raw_dist(s, j));
                out[static_cast<std::size_t>(j)] = best * scale_;
            }
        });
        return out;
    }
    // Multi-source shortest path.
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (int s : sources) {
        if (s < 0 || s >= size()) throw invalid_argument("source index out of range");
        out[static_cast<std::size_t>(s)] = 0.0;
        heap.emplace(0.0, s);
    }
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > out[static_cast<std::size_t>(u)]) continue;
        if (cutoff >= 0.0 && d > cutoff) continue;
        for (int e = graph_.offsets[u]; e < graph_.offsets[u + 1]; ++e) {
            const int v = graph_.targets[static_cast<std::size_t>(e)];
            const double nd = d + graph_.weights[static_cast<std::size_t>(e)] * scale_;
            if (nd < out[static_cast<std::size_t>(v)]) {
                out[static_cast<std::size_t>(v)] = nd;
                heap.emplace(nd, v);
            }
        }
    }
    return out;
}

std::vector<double> FiniteMetricSpace::graph_dists_from(int i, std::vector<int>* parents,
                                                        double cutoff) const {
    std::vector<double> dist(static_cast<std::size_t>(size()), kInf);
    if (parents) parents->assign(static_cast<std::size_t>(size()), -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[static_cast<std::size_t>(i)] = 0.0;
    heap.emplace(0.0, i);
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[static_cast<std::size_t>(u)]) continue;
        if (cutoff >= 0.0 && d > cutoff) continue;
        for (int e = graph_.offsets[u]; e < graph_.offsets[u + 1]; ++e) {
            const int v = graph_.targets[static_cast<std::size_t>(e)];
            const double nd = d + graph_.weights[static_cast<std::size_t>(e)] * scale_;
            if (nd < dist[static_cast<std::size_t>(v)]) {
                dist[static_cast<std::size_t>(v)] = nd;
                if (parents) (*parents)[static_cast<std::size_t>(v)] = u;
                heap.emplace(nd, v);
            }
        }
    }
    return dist;
}

double FiniteMetricSpace::graph_geodesic(int i, int j) const {
    if (i < 0 || j < 0 || i >= size() || j >= size()) {
        throw invalid_argument("point index out of range");
    }
    if (i == j) return 0.0;
    const auto row = graph_dists_from(i);
    const double d = row[static_cast<std::size_t>(j)];
    if (!std::isfinite(d)) {
        int count = 0;
        auto comp = graph_components(&count);
        std::ostringstream msg;
        msg << "neighborhood graph is disconnected: point " << i << " (component "
            << comp[static_cast<std::size_t>(i)] << ") cannot reach point " << j
            << " (component " << comp[static_cast<std::size_t>(j)] << "); " << count
            << " components total";
        throw domain_error(msg.str());
    }
    return d;
}

std::vector<int> FiniteMetricSpace::graph_path(int i, int j) const {
    std::vector<int> parents;
    const auto row = graph_dists_from(i, &parents);
    if (!std::isfinite(row[static_cast<std::size_t>(j)])) {
        graph_geodesic(i, j);  // throws with component diagnostics
    }
    std::vector<int> path;
    for (int v = j; v != -1; v = parents[static_cast<std::size_t>(v)]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    if (path.front() != i) throw internal_error("shortest-path tree is broken");
    return path;
}

std::vector<int> FiniteMetricSpace::graph_components(int* count) const {
    std::vector<int> label(static_cast<std::size_t>(size()), -1);
    int next = 0;
    std::vector<int> stack;
    for (int i = 0; i < size(); ++i) {
        if (label[static_cast<std::size_t>(i)] != -1) continue;
        stack.push_back(i);
        label[static_cast<std::size_t>(i)] = next;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int e = graph_.offsets[u]; e < graph_.offsets[u + 1]; ++e) {
                const int v = graph_.targets[static_cast<std::size_t>(e)];
                if (label[static_cast<std::size_t>(v)] == -1) {
                    label[static_cast<std::size_t>(v)] = next;
                    stack.push_back(v);
                }
            }
        }
        ++next;
    }
    if (count) *count = next;
    return label;
}

void FiniteMetricSpace::compute_nn_stats() {
    const int n = size();
    if (n <= 1) {
        density_ = 0.0;
        max_nn_ = 0.0;
        if (diameter_ <= 0.0) diameter_ = 0.0;
        return;
    }
    // For the sphere, nearest neighbors can be found in chord space (the arc
    // length is monotone in the chord) which avoids n^2 atan2 calls.
    const bool via_chord =
        form_ == AnalyticForm::kSphereArc || model_ == MetricModel::kGraphPath;
    std::vector<double> nn(static_cast<std::size_t>(n), kInf);
    std::vector<double> row_max(static_cast<std::size_t>(n), 0.0);
    detail::parallel_for(n, [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            double best = kInf, far = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                const double d = via_chord ? chord(coords_[static_cast<std::size_t>(i)],
                                                   coords_[static_cast<std::size_t>(j)])
                                           : raw_dist(i, j);
                if (d < best) best = d;
                if (d > far) far = d;
            }
            nn[static_cast<std::size_t>(i)] = best;
            row_max[static_cast<std::size_t>(i)] = far;
        }
    });
    auto to_metric = [&](double c) {
        if (form_ != AnalyticForm::kSphereArc) return c;
        const double r = meta_.params.at(0);
        return 2.0 * r * std::asin(std::min(1.0, c / (2.0 * r)));
    };
    std::vector<double> sorted = nn;
    std::sort(sorted.begin(), sorted.end());
    density_ = to_metric(sorted[static_cast<std::size_t>(n / 2)]);
    max_nn_ = to_metric(sorted.back());
    if (diameter_ <= 0.0) {
        diameter_ = to_metric(*std::max_element(row_max.begin(), row_max.end()));
    }
}

void FiniteMetricSpace::build_graph(double h) {
    const int n = size();
    // Sphere arcs are filtered in chord space first; accepted pairs get the
    // exact arc weight.
    const bool sphere = form_ == AnalyticForm::kSphereArc && model_ == MetricModel::kAnalytic;
    double chord_h = h;
    if (sphere) {
        const double r = meta_.params.at(0);
        chord_h = (h >= M_PI * r) ? (2.0 * r) : 2.0 * r * std::sin(h / (2.0 * r));
    }
    std::vector<std::vector<std::pair<int, double>>> adj(static_cast<std::size_t>(n));
    detail::parallel_for(n, [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                if (model_ == MetricModel::kGraphPath || sphere) {
                    const double c = chord(coords_[static_cast<std::size_t>(i)],
                                           coords_[static_cast<std::size_t>(j)]);
                    if (c > chord_h) continue;
                    const double w = (model_ == MetricModel::kGraphPath) ? c : raw_dist(i, j);
                    adj[static_cast<std::size_t>(i)].emplace_back(j, w);
                } else {
                    const double w = raw_dist(i, j);
                    if (w <= h) adj[static_cast<std::size_t>(i)].emplace_back(j, w);
                }
            }
        }
    });
    graph_.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
    std::size_t total = 0;
    for (int i = 0; i < n; ++i) {
        total += adj[static_cast<std::size_t>(i)].size();
        graph_.offsets[static_cast<std::size_t>(i) + 1] = static_cast<int>(total);
    }
    graph_.targets.resize(total);
    graph_.weights.resize(total);
    std::size_t w = 0;
    for (int i = 0; i < n; ++i) {
        for (const auto& [j, len] : adj[static_cast<std::size_t>(i)]) {
            graph_.targets[w] = j;
            graph_.weights[w] = len;
            ++w;
        }
    }
}

FiniteMetricSpace FiniteMetricSpace::build(std::vector<Vec3> coords, MetricModel model,
                                           AnalyticForm form, int manifold_dim,
                                           SpaceMetadata meta, double graph_scale) {
    if (coords.empty()) throw invalid_argument("space needs at least one point");
    if (manifold_dim < 1) throw invalid_argument("manifold dimension must be >= 1");
    FiniteMetricSpace s;
    s.coords_ = std::move(coords);
    s.model_ = model;
    s.form_ = form;
    s.n_man_ = manifold_dim;
    s.meta_ = std::move(meta);
    s.diameter_ = s.meta_.analytic_diameter;
    s.compute_nn_stats();

    if (s.size() == 1) {
        s.h_ = 0.0;
        s.graph_.offsets = {0, 0};
        return s;
    }

    double h = graph_scale > 0.0 ? graph_scale : 2.4 * s.max_nn_;
    for (int attempt = 0;; ++attempt) {
        s.build_graph(h);
        int count = 0;
        s.graph_components(&count);
        if (count == 1) break;
        if (graph_scale > 0.0 || attempt >= 10) {
            std::ostringstream msg;
            msg << "neighborhood graph at scale " << h << " has " << count
                << " components";
            throw domain_error(msg.str());
        }
        h *= 1.3;
    }
    s.h_ = h;
    if (s.model_ == MetricModel::kGraphPath) {
        // The metric is the path metric itself; refresh diameter and NN stats
        // are chordal lower bounds which is fine for density purposes.
        const auto row0 = s.graph_dists_from(0);
        int far = 0;
        for (int i = 1; i < s.size(); ++i) {
            if (row0[static_cast<std::size_t>(i)] > row0[static_cast<std::size_t>(far)]) far = i;
        }
        const auto row1 = s.graph_dists_from(far);
        s.diameter_ = *std::max_element(row1.begin(), row1.end());
    }
    return s;
}

FiniteMetricSpace FiniteMetricSpace::rescaled(double lambda) const {
    if (!(lambda > 0.0)) throw invalid_argument("rescaling factor must be > 0");
    FiniteMetricSpace s = *this;
    s.scale_ = scale_ * lambda;
    s.cache_ = std::make_shared<RowCache>();
    return s;
}

void FiniteMetricSpace::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << "#codim1-space v1\n";
    out << "#kind " << meta_.kind << "\n";
    out << "#nman " << n_man_ << "\n";
    out << "#metric " << (model_ == MetricModel::kAnalytic ? "analytic" : "graph") << "\n";
    out << "#form " << static_cast<int>(form_) << "\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", h_);
    out << "#h " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", scale_);
    out << "#scale " << buf << "\n";
    out << "#seed " << meta_.seed << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", meta_.model_L);
    out << "#model_L " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", meta_.analytic_area);
    out << "#area " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", meta_.analytic_diameter);
    out << "#diam " << buf << "\n";
    out << "#params";
    for (double p : meta_.params) {
        std::snprintf(buf, sizeof(buf), "%.17g", p);
        out << " " << buf;
    }
    out << "\n#npoints " << size() << "\n";
    out << "#columns x y z\n";
    for (const Vec3& p : coords_) {
        char line[200];
        std::snprintf(line, sizeof(line), "%.17g %.17g %.17g\n", p.x, p.y, p.z);
        out << line;
    }
    if (!out) throw io_error("write to " + path + " failed");
}

FiniteMetricSpace FiniteMetricSpace::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != "#codim1-space v1") {
        throw io_error(path + ": not a codim1 space file");
    }
    SpaceMetadata meta;
    int n_man = 1, npoints = -1, form_i = 0;
    double h = 0.0, scale = 1.0;
    std::string metric = "analytic";
    while (std::getline(in, line)) {
        if (line.rfind("#columns", 0) == 0) break;
        std::istringstream ss(line);
        std::string key;
        ss >> key;
        if (key == "#kind") {
            ss >> meta.kind;
        } else if (key == "#nman") {
            ss >> n_man;
        } else if (key == "#metric") {
            ss >> metric;
        } else if (key == "#form") {
            ss >> form_i;
        } else if (key == "#h") {
            ss >> h;
        } else if (key == "#scale") {
            ss >> scale;
        } else if (key == "#seed") {
            ss >> meta.seed;
        } else if (key == "#model_L") {
            ss >> meta.model_L;
        } else if (key == "#area") {
            ss >> meta.analytic_area;
        } else if (key == "#diam") {
            ss >> meta.analytic_diameter;
        } else if (key == "#params") {
            double p;
            while (ss >> p) meta.params.push_back(p);
        } else if (key == "#npoints") {
            ss >> npoints;
        } else {
            throw io_error(path + ": unknown header line: " + line);
        }
    }
    if (npoints <= 0) throw io_error(path + ": missing #npoints");
    std::vector<Vec3> coords;
    coords.reserve(static_cast<std::size_t>(npoints));
    for (int i = 0; i < npoints; ++i) {
        Vec3 p;
        if (!(in >> p.x >> p.y >> p.z)) throw io_error(path + ": truncated point table");
        coords.push_back(p);
    }
    auto space = build(std::move(coords),
                       metric == "graph" ? MetricModel::kGraphPath : MetricModel::kAnalytic,
                       static_cast<AnalyticForm>(form_i), n_man, std::move(meta), h);
    if (scale != 1.0) space = space.rescaled(scale);
    return space;
}

double audit_triangle_inequality(const FiniteMetricSpace& space, int count,
                                 std::uint64_t seed) {
    Rng rng(seed);
    const int n = space.size();
    double worst = 0.0;
    for (int t = 0; t < count; ++t) {
        const int i = rng.uniform_int(n);
        const int j = rng.uniform_int(n);
        const int k = rng.uniform_int(n);
        const double slack = space.dist(i, j) + space.dist(j, k) - space.dist(i, k);
        worst = std::min(worst, slack);
    }
    return worst;
}

}  // namespace codim1
