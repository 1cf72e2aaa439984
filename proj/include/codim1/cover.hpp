#pragma once

#include <vector>

#include "codim1/measure.hpp"
#include "codim1/metric_space.hpp"
#include "codim1/simplicial.hpp"

namespace codim1 {

// Maximal separated net: centers pairwise >= sep apart, every point within
// sep of a center.
struct Net {
    std::vector<int> centers;
    double sep = 0.0;
};

// Greedy in index order; deterministic given the point ordering and
// equivariant under joint rescaling of the metric and sep.
Net greedy_net(const FiniteMetricSpace& space, double sep);
Net greedy_net_subset(const FiniteMetricSpace& space, const std::vector<int>& subset,
                      double sep);

struct NetAudit {
    bool separation_ok = true;
    bool maximality_ok = true;
    double min_center_gap = 0.0;  // min pairwise center distance
    double max_point_gap = 0.0;   // max distance from a point to its net
};
NetAudit audit_net(const FiniteMetricSpace& space, const Net& net);
NetAudit audit_net_subset(const FiniteMetricSpace& space, const std::vector<int>& subset,
                          const Net& net);

// Open cover by balls B(x_i, epsilon/2) over the greedy epsilon/4 net, with
// the certificates audited exactly on the sample: element diameters <= eps,
// every sampled ball of radius eps/4 inside some element, and the exact
// multiplicity.
struct BallCover {
    Net net;
    double epsilon = 0.0;
    double radius = 0.0;    // epsilon / 2
    double lebesgue = 0.0;  // certified value (eps/4 for ball covers)
    double lebesgue_audited = 0.0;  // the exact audited supremum on the sample
    double delta = 0.0;     // partition-of-unity parameter, defaults to lebesgue
    int multiplicity = 0;
    double max_diameter = 0.0;
    std::vector<std::vector<int>> members;      // element -> sample indices
    std::vector<std::vector<int>> memberships;  // sample -> element ids

    int element_count() const { return static_cast<int>(members.size()); }
};

BallCover build_cover(const FiniteMetricSpace& space, double epsilon);

// Wraps an arbitrary membership table (e.g. hand-built arc covers) with the
// same audited certificates. `epsilon_label` is the nominal cover scale.
BallCover cover_from_members(const FiniteMetricSpace& space,
                             std::vector<std::vector<int>> members, double epsilon_label);

// Largest d such that every sampled open ball B(x, d) lies inside one element.
double certify_lebesgue(const FiniteMetricSpace& space, const BallCover& cover);

// Nerve: a simplex per set of elements with a common sample point.
SimplicialComplex nerve(const BallCover& cover);
SimplicialComplex nerve_from_memberships(const std::vector<std::vector<int>>& per_sample,
                                         int element_count);

// Greedy separated-subset doubling estimate: the max size, over sampled
// (center, radius) pairs, of a maximal r/2-separated subset of B(center, r)
// built farthest-point-first. A certified lower bound for the true constant.
int estimate_doubling(const FiniteMetricSpace& space, int trials, std::uint64_t seed);

// Homological separation certificate at a fixed scale: Betti number
// beta_{n-1} of the nerve of the scale-cover of the set. Nonzero values are
// consistent with the set separating the ambient manifold.
int separation_witness(const FiniteMetricSpace& space, const SampleSet& set, double scale);

}  // namespace codim1
