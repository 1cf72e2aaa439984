#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "codim1/metric_space.hpp"

namespace codim1 {

enum class SetRole { kSeparatingSet, kRegion, kLevelSet };

// A closed set represented at a resolution scale by the sample points it
// contains. `scale` doubles as the half-width of the band the set is
// thickened to for component analysis.
struct SampleSet {
    std::vector<int> indices;
    double scale = 0.0;
    SetRole role = SetRole::kSeparatingSet;
};

struct MeasureEstimate {
    double value = 0.0;
    int k = 0;
    double scale = 0.0;
    std::string method = "covering";
    double spread = 0.0;                     // max - min over the scale triple
    std::array<double, 3> per_scale{0, 0, 0};  // values at s, sqrt(2) s, 2 s
};

// Greedy marching cover of an abstract point list. `dists_from` returns the
// distances from list point i to every list point. Exposed so the simplicial
// modules can reuse the same estimator on barycentric point clouds.
MeasureEstimate covering_measure(int count,
                                 const std::function<std::vector<double>(int)>& dists_from,
                                 double scale, int k);

// Covering-number Hausdorff surrogate, calibrated so the unit segment reports
// 1.0 at k = 1. k = 0 returns the point count.
MeasureEstimate hausdorff_estimate(const FiniteMetricSpace& space, const SampleSet& set,
                                   int k);

struct SeparationStats {
    int n_components = 0;
    std::vector<int> component_of;       // -1 = removed band, else component id
    std::vector<std::vector<int>> components;  // members per component
    std::vector<double> inradii;         // per component
    std::vector<int> deep_points;        // the point realizing each in-radius
    double seprad = 0.0;
    int witness_x = -1, witness_y = -1;  // realize the two largest in-radii
    double band_scale = 0.0;
    std::vector<double> dist_to_set;     // distance from every sample to the set
};

// Removes every sample within `set.scale` of the set and labels the remaining
// components of the neighborhood graph (flood fill in index order).
SeparationStats components_of_complement(const FiniteMetricSpace& space,
                                         const SampleSet& set);

// In-radius of one complement component: max distance to the set samples plus
// the band half-width (the thickening compensation). dist(x, empty) = diam.
double inradius(const FiniteMetricSpace& space, const std::vector<int>& component,
                const SampleSet& set, const std::vector<double>& dist_to_set);

// components_of_complement + in-radii + the sup-min over component pairs.
SeparationStats separation_radius(const FiniteMetricSpace& space, const SampleSet& set);

double set_diameter(const FiniteMetricSpace& space, const SampleSet& set);

struct DiameterCheck {
    bool ok = true;
    double diam = 0.0, seprad = 0.0, lower_bound = 0.0, tolerance = 0.0, margin = 0.0;
};

// diam(S) >= seprad(S)/L - tolerance with tolerance = 2h + 2*scale.
DiameterCheck diameter_bound_check(const FiniteMetricSpace& space, const SampleSet& set,
                                   double L);

struct SliceProfile {
    std::vector<double> t_mid;
    std::vector<MeasureEstimate> slices;  // H_{n-1} per distance band
    double band_width = 0.0;
    double integral = 0.0;      // sum H_{n-1}(S_t) * dt
    MeasureEstimate ball;       // H_n(B(center, r))
    double ratio = 0.0;         // integral / ball
};

// Coarea-style audit: distance annuli around a center and the Riemann sum of
// their codimension-1 measures against the ball volume.
SliceProfile eilenberg_slices(const FiniteMetricSpace& space, int center, double r,
                              int bands);

}  // namespace codim1
