#include "codim1/codim1.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "codim1/config.hpp"
#include "codim1/cover.hpp"
#include "codim1/deformation.hpp"
#include "codim1/errors.hpp"
#include "codim1/experiments.hpp"
#include "codim1/generators.hpp"
#include "codim1/io.hpp"
#include "internal/parallel.hpp"

namespace {

thread_local std::string g_last_error;

c1_status to_status(const codim1::Error& e) {
    switch (e.code()) {
        case codim1::ErrorCode::kInvalidArgument: return C1_ERR_INVALID_ARGUMENT;
        case codim1::ErrorCode::kIo: return C1_ERR_IO;
        case codim1::ErrorCode::kDomain: return C1_ERR_DOMAIN;
        case codim1::ErrorCode::kInternal: return C1_ERR_INTERNAL;
    }
    return C1_ERR_INTERNAL;
}

template <typename Fn>
c1_status guarded(Fn&& fn) {
    try {
        fn();
        return C1_OK;
    } catch (const codim1::Error& e) {
        g_last_error = e.what();
        return to_status(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return C1_ERR_INTERNAL;
    }
}

c1_status fill_indices(const std::vector<int>& src, int* buf, int capacity, int* n_out) {
    if (n_out) *n_out = static_cast<int>(src.size());
    if (!buf) return C1_OK;
    if (capacity < static_cast<int>(src.size())) {
        g_last_error = "buffer too small";
        return C1_ERR_INVALID_ARGUMENT;
    }
    std::memcpy(buf, src.data(), src.size() * sizeof(int));
    return C1_OK;
}

}  // namespace

struct c1_space_s {
    codim1::FiniteMetricSpace space;
};
struct c1_cover_s {
    codim1::BallCover cover;
    const c1_space_s* host;
};
struct c1_complex_s {
    codim1::SimplicialComplex complex;
};

extern "C" {

const char* c1_last_error(void) { return g_last_error.c_str(); }

void c1_set_threads(int n) { codim1::detail::thread_count() = n > 0 ? n : 1; }

c1_status c1_space_generate(const char* kind, const double* params, int n_params,
                            int sample_count, unsigned long long seed, c1_space** out) {
    return guarded([&] {
        if (!kind || !out) throw codim1::invalid_argument("null argument");
        codim1::ManifoldSpec spec;
        spec.kind = kind;
        spec.params.assign(params, params + (params ? n_params : 0));
        spec.sample_count = sample_count;
        spec.seed = seed;
        *out = new c1_space_s{codim1::generate(spec)};
    });
}

c1_status c1_space_load(const char* path, c1_space** out) {
    return guarded([&] {
        if (!path || !out) throw codim1::invalid_argument("null argument");
        *out = new c1_space_s{codim1::FiniteMetricSpace::load(path)};
    });
}

c1_status c1_space_save(const c1_space* space, const char* path) {
    return guarded([&] {
        if (!space || !path) throw codim1::invalid_argument("null argument");
        space->space.save(path);
    });
}

void c1_space_free(c1_space* space) { delete space; }

int c1_space_size(const c1_space* space) { return space ? space->space.size() : 0; }
int c1_space_manifold_dim(const c1_space* space) {
    return space ? space->space.manifold_dim() : 0;
}
double c1_space_graph_scale(const c1_space* space) {
    return space ? space->space.graph_scale() : 0.0;
}
double c1_space_diameter(const c1_space* space) {
    return space ? space->space.diameter() : 0.0;
}
double c1_space_density(const c1_space* space) {
    return space ? space->space.sample_density() : 0.0;
}

c1_status c1_space_distance(const c1_space* space, int i, int j, double* out) {
    return guarded([&] {
        if (!space || !out) throw codim1::invalid_argument("null argument");
        *out = space->space.dist(i, j);
    });
}

c1_status c1_graph_geodesic(const c1_space* space, int i, int j, double* out) {
    return guarded([&] {
        if (!space || !out) throw codim1::invalid_argument("null argument");
        *out = space->space.graph_geodesic(i, j);
    });
}

c1_status c1_estimate_doubling(const c1_space* space, int trials,
                               unsigned long long seed, int* out) {
    return guarded([&] {
        if (!space || !out) throw codim1::invalid_argument("null argument");
        *out = codim1::estimate_doubling(space->space, trials, seed);
    });
}

c1_status c1_net_build(const c1_space* space, double sep, int* buf, int capacity,
                       int* n_out) {
    return guarded([&] {
        if (!space) throw codim1::invalid_argument("null argument");
        const codim1::Net net = codim1::greedy_net(space->space, sep);
        const c1_status rc = fill_indices(net.centers, buf, capacity, n_out);
        if (rc != C1_OK) throw codim1::invalid_argument(g_last_error);
    });
}

c1_status c1_cover_build(const c1_space* space, double epsilon, c1_cover** out) {
    return guarded([&] {
        if (!space || !out) throw codim1::invalid_argument("null argument");
        *out = new c1_cover_s{codim1::build_cover(space->space, epsilon), space};
    });
}

void c1_cover_free(c1_cover* cover) { delete cover; }

c1_status c1_cover_get_stats(const c1_cover* cover, c1_cover_stats* out) {
    return guarded([&] {
        if (!cover || !out) throw codim1::invalid_argument("null argument");
        const codim1::BallCover& c = cover->cover;
        out->element_count = c.element_count();
        out->multiplicity = c.multiplicity;
        out->epsilon = c.epsilon;
        out->radius = c.radius;
        out->lebesgue = c.lebesgue;
        out->lebesgue_audited = c.lebesgue_audited;
        out->delta = c.delta;
        out->max_diameter = c.max_diameter;
    });
}

c1_status c1_cover_centers(const c1_cover* cover, int* buf, int capacity, int* n_out) {
    return guarded([&] {
        if (!cover) throw codim1::invalid_argument("null argument");
        const c1_status rc = fill_indices(cover->cover.net.centers, buf, capacity, n_out);
        if (rc != C1_OK) throw codim1::invalid_argument(g_last_error);
    });
}

c1_status c1_nerve_build(const c1_cover* cover, c1_complex** out) {
    return guarded([&] {
        if (!cover || !out) throw codim1::invalid_argument("null argument");
        *out = new c1_complex_s{codim1::nerve(cover->cover)};
    });
}

c1_status c1_complex_load_json(const char* path, c1_complex** out) {
    return guarded([&] {
        if (!path || !out) throw codim1::invalid_argument("null argument");
        *out = new c1_complex_s{codim1::complex_from_json(codim1::read_json(path))};
    });
}

c1_status c1_complex_save_json(const c1_complex* complex, const char* path) {
    return guarded([&] {
        if (!complex || !path) throw codim1::invalid_argument("null argument");
        codim1::write_json(codim1::complex_to_json(complex->complex), path);
    });
}

void c1_complex_free(c1_complex* complex) { delete complex; }

int c1_complex_dim(const c1_complex* complex) {
    return complex ? complex->complex.dim() : -1;
}

long long c1_complex_count(const c1_complex* complex, int dim) {
    if (!complex) return 0;
    if (dim < 0) return static_cast<long long>(complex->complex.simplex_count());
    return static_cast<long long>(complex->complex.count_in_dim(dim));
}

c1_status c1_complex_betti(const c1_complex* complex, int k, int* out) {
    return guarded([&] {
        if (!complex || !out) throw codim1::invalid_argument("null argument");
        *out = codim1::betti_z2(complex->complex, k);
    });
}

c1_status c1_hausdorff_estimate(const c1_space* space, const int* indices, int n,
                                double scale, int k, c1_measure* out) {
    return guarded([&] {
        if (!space || !out || (n > 0 && !indices)) {
            throw codim1::invalid_argument("null argument");
        }
        codim1::SampleSet set;
        set.indices.assign(indices, indices + n);
        set.scale = scale;
        const codim1::MeasureEstimate est =
            codim1::hausdorff_estimate(space->space, set, k);
        out->value = est.value;
        out->spread = est.spread;
        out->scale = est.scale;
        out->k = est.k;
    });
}

c1_status c1_separation_radius(const c1_space* space, const int* indices, int n,
                               double scale, c1_separation* out) {
    return guarded([&] {
        if (!space || !out || (n > 0 && !indices)) {
            throw codim1::invalid_argument("null argument");
        }
        codim1::SampleSet set;
        set.indices.assign(indices, indices + n);
        set.scale = scale;
        const codim1::SeparationStats stats =
            codim1::separation_radius(space->space, set);
        out->components = stats.n_components;
        out->seprad = stats.seprad;
        out->witness_x = stats.witness_x;
        out->witness_y = stats.witness_y;
    });
}

c1_status c1_separation_witness(const c1_space* space, const int* indices, int n,
                                double witness_scale, double band_scale, int* betti_out) {
    return guarded([&] {
        if (!space || !betti_out || (n > 0 && !indices)) {
            throw codim1::invalid_argument("null argument");
        }
        codim1::SampleSet set;
        set.indices.assign(indices, indices + n);
        set.scale = band_scale;
        *betti_out = codim1::separation_witness(space->space, set, witness_scale);
    });
}

c1_status c1_select_family(const c1_space* space, const char* family, double value,
                           double scale, int* buf, int capacity, int* n_out,
                           double* scale_used) {
    return guarded([&] {
        if (!space || !family) throw codim1::invalid_argument("null argument");
        const auto sets =
            codim1::build_family(space->space, family, {value}, scale);
        if (sets.empty()) throw codim1::invalid_argument("family produced no set");
        if (scale_used) *scale_used = sets.front().set.scale;
        const c1_status rc = fill_indices(sets.front().set.indices, buf, capacity, n_out);
        if (rc != C1_OK) throw codim1::invalid_argument(g_last_error);
    });
}

c1_status c1_project_file(const char* complex_json_path, const char* set_json_path,
                          int k, const char* out_dir) {
    return guarded([&] {
        if (!complex_json_path || !set_json_path || !out_dir) {
            throw codim1::invalid_argument("null argument");
        }
        const codim1::SimplicialComplex complex =
            codim1::complex_from_json(codim1::read_json(complex_json_path));
        const codim1::ComplexSampleSet set =
            codim1::complex_set_from_json(codim1::read_json(set_json_path));
        auto [image, log] = codim1::project_to_skeleton(complex, set, k);
        namespace fs = std::filesystem;
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        codim1::write_json(codim1::complex_set_to_json(image),
                           (fs::path(out_dir) / "image_set.json").string());
        codim1::write_json(codim1::projection_log_to_json(log),
                           (fs::path(out_dir) / "projection_log.json").string());
        std::ofstream csv(fs::path(out_dir) / "projection_log.csv");
        if (!csv) throw codim1::io_error("cannot write projection_log.csv");
        csv << codim1::projection_log_to_csv(log);
    });
}

c1_status c1_run_experiment(const char* name, const char* config_path,
                            const char* out_dir_override, long long seed_override,
                            const char* resolution_override, int threads,
                            int* passed_out) {
    return guarded([&] {
        if (!name || !config_path) throw codim1::invalid_argument("null argument");
        codim1::ExperimentConfig cfg = codim1::ExperimentConfig::from_file(config_path);
        if (out_dir_override && *out_dir_override) cfg.out_dir = out_dir_override;
        if (seed_override >= 0) {
            cfg.manifold.seed = static_cast<std::uint64_t>(seed_override);
        }
        if (resolution_override && *resolution_override) {
            const std::string r = resolution_override;
            if (r != "low" && r != "med" && r != "high") {
                throw codim1::invalid_argument("resolution must be low|med|high");
            }
            cfg.resolution = r;
        }
        if (threads > 0) cfg.threads = threads;

        const std::string experiment = name;
        codim1::VerificationReport report;
        if (experiment == "verify-iso") {
            report = codim1::verify_isoperimetric(cfg);
        } else if (experiment == "verify-vol") {
            report = codim1::verify_volume(cfg);
        } else if (experiment == "dumbbell") {
            report = codim1::dumbbell_necessity(cfg);
        } else if (experiment == "pipeline") {
            report = codim1::run_pipeline(cfg);
        } else {
            throw codim1::invalid_argument("unknown experiment: " + experiment);
        }
        report.write(cfg.out_dir);
        if (passed_out) *passed_out = report.passed ? 1 : 0;
    });
}

}  // extern "C"
