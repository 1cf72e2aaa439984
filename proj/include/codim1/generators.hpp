#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "codim1/metric_space.hpp"

namespace codim1 {

// Test-manifold request. Parameters by kind:
//   sphere           params = {radius}           (default {1})
//   circle           params = {radius}           (default {1})
//   torus            params = {side_a, side_b}   (flat metric, default {1,1})
//   dumbbell_surface params = {neck_radius eps}  (0 < eps < bell radius)
//   interval_test    params = {length}           (default {1})
struct ManifoldSpec {
    std::string kind;
    std::vector<double> params;
    int sample_count = 0;
    std::uint64_t seed = 0;
};

// Dumbbell model dimensions: two bells of radius 0.3 joined by a neck of
// length 0.5 and radius eps, with a C^1 profile blend of half-width eps/2 at
// each junction. The bell size is chosen so the geodesic in-radius of a bell
// component is ~1, which makes the necessity experiment's ratio/eps slope
// land at 2*pi for the ideal model.
constexpr double kDumbbellBellRadius = 0.3;
constexpr double kDumbbellNeckLength = 0.5;

// Closed-form surface area of the ideal (unblended) dumbbell model.
double dumbbell_model_area(double eps);
// Geodesic in-radius of one bell-side component when the neck meridian is
// removed (far pole to neck, along the profile).
double dumbbell_model_inradius(double eps);
// Sample count for which the neck is resolved (mean spacing <= eps/6).
int dumbbell_recommended_samples(double eps);

FiniteMetricSpace generate(const ManifoldSpec& spec);

}  // namespace codim1
