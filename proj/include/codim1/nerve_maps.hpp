#pragma once

#include <map>
#include <vector>

#include "codim1/cover.hpp"
#include "codim1/simplicial.hpp"

namespace codim1 {

// Lipschitz partition of unity subordinate to a cover:
//   phi_i(x) = min(1, (2/delta) * max(0, dist(x, M \ U_i) - delta/2)),
//   f_i = phi_i / sum_j phi_j,
// stored sparsely per sample point. Requires delta <= the cover's certified
// Lebesgue number so that sum_j phi_j >= 1 everywhere.
struct PartitionOfUnity {
    double delta = 0.0;
    double lip_bound = 0.0;  // (2N+1)/delta
    // Per sample: (element id, f_i value), element ids ascending, zeros kept
    // out so the support condition is exact by construction.
    std::vector<std::vector<std::pair<int, double>>> values;

    double value(int sample, int element) const;
    double sum(int sample) const;
};

PartitionOfUnity partition_of_unity(const FiniteMetricSpace& space, const BallCover& cover);

struct LipschitzAudit {
    double max_component_ratio = 0.0;  // max over i, pairs of |f_i(x)-f_i(y)|/d(x,y)
    double bound = 0.0;
    int pairs = 0;
};
LipschitzAudit audit_pou_lipschitz(const FiniteMetricSpace& space,
                                   const PartitionOfUnity& pou, int pairs,
                                   std::uint64_t seed);

// Barycentric coordinate map f(x) = sum_i f_i(x) e_i into the nerve.
struct NerveMap {
    std::vector<BarycentricPoint> images;  // one per sample point
    double lip_estimate = 0.0;             // sampled ratio in the nerve path metric
    double lip_estimate_euclidean = 0.0;
    double lip_bound = 0.0;                // sqrt(2N) * (2N+1) / delta
};

NerveMap map_f(const FiniteMetricSpace& space, const PartitionOfUnity& pou,
               const SimplicialComplex& nerve_complex, int lip_pairs = 2000,
               std::uint64_t lip_seed = 7);

// Edge-path surrogate for the nerve's intrinsic metric: Euclidean inside a
// shared simplex, otherwise via vertices and 1-skeleton hops (edge length
// sqrt(2)).
double nerve_point_distance(const SimplicialComplex& complex, const BarycentricPoint& a,
                            const BarycentricPoint& b);

// Skeleton-inductive right inverse g: vertices to net centers, edges to
// shortest-path chains, higher cells to discrete conings over the graph.
struct GluedMap {
    std::vector<int> vertex_images;               // nerve vertex -> sample index
    std::map<Simplex, std::vector<int>> cell_images;  // simplex -> image point set
    std::map<Simplex, double> diam_table;
    std::vector<Simplex> flagged;  // cells whose image exceeds (k!)(2L)^k eps
    int built_dim = 0;
    double epsilon = 0.0;
    double L = 0.0;

    static double diam_bound(int k, double L, double epsilon);
};

GluedMap build_g(const SimplicialComplex& nerve_complex, const BallCover& cover,
                 const FiniteMetricSpace& space, double L, int max_dim = -1);

}  // namespace codim1
