#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace codim1 {

struct Vec3 {
    double x = 0, y = 0, z = 0;
};

// How pairwise distances are produced.
//  kAnalytic:  closed-form intrinsic formula on the ambient coordinates.
//  kGraphPath: shortest paths in the neighborhood graph (chordal edge weights);
//              used when no closed form exists (e.g. the dumbbell surface).
enum class MetricModel { kAnalytic, kGraphPath };

enum class AnalyticForm { kEuclidean, kLine, kCircleArc, kSphereArc, kFlatTorus };

struct SpaceMetadata {
    std::string kind;             // sphere | circle | torus | dumbbell_surface | interval_test | points
    std::vector<double> params;   // generator parameters (radii, side lengths, neck width)
    std::uint64_t seed = 0;
    double analytic_area = -1.0;  // total H_n of the ideal model, < 0 if unknown
    double analytic_diameter = -1.0;
    double model_L = 1.0;         // linear local contractibility constant of the model
};

struct NeighborGraph {
    std::vector<int> offsets;  // CSR, size N+1
    std::vector<int> targets;
    std::vector<double> weights;  // unscaled edge lengths
    int node_count() const { return static_cast<int>(offsets.size()) - 1; }
    int degree(int i) const { return offsets[i + 1] - offsets[i]; }
};

// A sampled compact metric space: point identifiers with a symmetric distance
// oracle and a neighborhood graph at connectivity radius h whose shortest
// paths approximate intrinsic distances. Immutable after construction; all
// queries are safe to run concurrently.
class FiniteMetricSpace {
public:
    // Builds graph, nearest-neighbor statistics and diameter. `graph_scale`
    // of 0 means "choose automatically" (grown until the graph connects).
    static FiniteMetricSpace build(std::vector<Vec3> coords, MetricModel model,
                                   AnalyticForm form, int manifold_dim,
                                   SpaceMetadata meta, double graph_scale = 0.0);

    int size() const { return static_cast<int>(coords_.size()); }
    int manifold_dim() const { return n_man_; }
    MetricModel metric_model() const { return model_; }
    AnalyticForm analytic_form() const { return form_; }
    const SpaceMetadata& metadata() const { return meta_; }
    const std::vector<Vec3>& coords() const { return coords_; }
    const NeighborGraph& graph() const { return graph_; }

    double graph_scale() const { return h_ * scale_; }
    double diameter() const { return diameter_ * scale_; }
    // Median nearest-neighbor distance: the resolution limit of the sample.
    double sample_density() const { return density_ * scale_; }
    double max_nn_distance() const { return max_nn_ * scale_; }
    double metric_scale() const { return scale_; }

    double dist(int i, int j) const;
    std::vector<double> dists_from(int i) const;
    // Multi-source distance to a set. For analytic metrics this is the exact
    // minimum over sources; for graph metrics a multi-source shortest path.
    // With a cutoff >= 0, values beyond it may be reported as infinity.
    std::vector<double> dists_to_set(std::span<const int> sources,
                                     double cutoff = -1.0) const;

    // Shortest-path distance in the h-graph (>= dist for analytic metrics).
    double graph_geodesic(int i, int j) const;
    std::vector<int> graph_path(int i, int j) const;
    // Shortest-path tree from a source: returns distances, fills parents.
    std::vector<double> graph_dists_from(int i, std::vector<int>* parents = nullptr,
                                         double cutoff = -1.0) const;

    // Connected components of the neighborhood graph, labeled by index order.
    std::vector<int> graph_components(int* count = nullptr) const;

    // Same sample with the metric rescaled by lambda (> 0).
    FiniteMetricSpace rescaled(double lambda) const;

    void save(const std::string& path) const;
    static FiniteMetricSpace load(const std::string& path);

private:
    FiniteMetricSpace() = default;
    double raw_dist(int i, int j) const;  // unscaled
    void compute_nn_stats();
    void build_graph(double h);

    std::vector<Vec3> coords_;
    MetricModel model_ = MetricModel::kAnalytic;
    AnalyticForm form_ = AnalyticForm::kEuclidean;
    int n_man_ = 1;
    SpaceMetadata meta_;
    double scale_ = 1.0;  // metric rescaling factor applied on output
    double h_ = 0.0;
    double density_ = 0.0;
    double max_nn_ = 0.0;
    double diameter_ = 0.0;
    NeighborGraph graph_;

    // Per-source row cache for graph-path metrics (never shared across copies).
    struct RowCache {
        std::mutex mutex;
        std::unordered_map<int, std::shared_ptr<const std::vector<double>>> rows;
        std::vector<int> order;
    };
    mutable std::shared_ptr<RowCache> cache_ = std::make_shared<RowCache>();
};

// Audits `count` random triples for the triangle inequality; returns the worst
// violation (negative slack) which should be ~0 up to float rounding.
double audit_triangle_inequality(const FiniteMetricSpace& space, int count,
                                 std::uint64_t seed);

}  // namespace codim1
