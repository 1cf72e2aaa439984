#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "codim1/generators.hpp"

namespace codim1 {

// Flat key-value experiment configuration with [section] headers. Unknown
// sections or keys are errors so misconfiguration fails loudly.
//
//   [manifold]  kind, params, samples, seed
//   [sets]      family (latitude|level_set|neck_loop|arc|none), values,
//               scale (0 = auto), witness_scale (0 = auto)
//   [cover]     epsilon (0 = diam/32)
//   [volume]    radii, bands, centers
//   [dumbbell]  epsilons
//   [run]       doubling_trials, threads, resolution (low|med|high)
//   [output]    dir
struct ExperimentConfig {
    ManifoldSpec manifold{"sphere", {1.0}, 4000, 1};

    std::string family = "latitude";
    std::vector<double> family_values;
    double set_scale = 0.0;
    double witness_scale = 0.0;

    double cover_epsilon = 0.0;

    std::vector<double> radii;
    int bands = 8;
    int centers = 2;

    std::vector<double> dumbbell_epsilons;

    int doubling_trials = 200;
    int threads = 1;
    std::string resolution = "med";

    std::string out_dir = "out";

    static ExperimentConfig from_file(const std::string& path);
    static ExperimentConfig from_string(const std::string& text, const std::string& name);

    // Resolution multiplier applied to manifold.sample_count (low 1/2, med 1,
    // high 2).
    int effective_samples() const;

    std::string describe() const;  // canonical text form (for reports)
};

}  // namespace codim1
