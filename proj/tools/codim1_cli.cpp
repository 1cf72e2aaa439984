// Command-line front end. Talks to the core exclusively through the C API.
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "codim1/codim1.h"

namespace {

int fail(c1_status rc, const char* what) {
    std::fprintf(stderr, "error (%s, code %d): %s\n", what, static_cast<int>(rc),
                 c1_last_error());
    return 1;
}

struct SpaceHandle {
    c1_space* ptr = nullptr;
    ~SpaceHandle() { c1_space_free(ptr); }
};
struct CoverHandle {
    c1_cover* ptr = nullptr;
    ~CoverHandle() { c1_cover_free(ptr); }
};
struct ComplexHandle {
    c1_complex* ptr = nullptr;
    ~ComplexHandle() { c1_complex_free(ptr); }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale verification of codimension-1 measure lower bounds on "
                 "sampled metric manifolds"};
    app.require_subcommand(1);

    int threads = 1;
    app.add_option("--threads", threads, "worker threads (outputs do not depend on it)");

    // gen ---------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a sampled test manifold");
    std::string gen_kind = "sphere";
    std::vector<double> gen_params;
    int gen_samples = 4000;
    long long gen_seed = 1;
    std::string gen_out = "space.txt";
    gen->add_option("--kind", gen_kind, "sphere|circle|torus|dumbbell_surface|interval_test");
    gen->add_option("--params", gen_params, "generator parameters (radii, sides, neck)");
    gen->add_option("--samples", gen_samples, "sample count");
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--out", gen_out, "output space file");

    // net ---------------------------------------------------------------
    auto* net = app.add_subcommand("net", "greedy maximal separated net of a space");
    std::string net_space;
    double net_sep = 0.0;
    net->add_option("--space", net_space, "space file")->required();
    net->add_option("--sep", net_sep, "separation parameter")->required();

    // nerve -------------------------------------------------------------
    auto* nerve = app.add_subcommand("nerve", "ball cover and its nerve");
    std::string nerve_space, nerve_out = "nerve.json";
    double nerve_eps = 0.0;
    nerve->add_option("--space", nerve_space, "space file")->required();
    nerve->add_option("--epsilon", nerve_eps, "cover scale")->required();
    nerve->add_option("--out", nerve_out, "nerve JSON output");

    // project -------------------------------------------------------------
    auto* project = app.add_subcommand("project", "skeleton projection of a sample set");
    std::string prj_complex, prj_set, prj_out = "out";
    int prj_k = 1;
    project->add_option("--complex", prj_complex, "codim1-nerve/1 JSON")->required();
    project->add_option("--set", prj_set, "codim1-bset/1 JSON")->required();
    project->add_option("--k", prj_k, "target dimension");
    project->add_option("--out", prj_out, "output directory");

    // measure -------------------------------------------------------------
    auto* measure = app.add_subcommand("measure", "covering-measure estimate of a set");
    std::string ms_space, ms_family = "latitude";
    double ms_value = 1.5707963267948966, ms_scale = 0.0;
    int ms_k = 1;
    measure->add_option("--space", ms_space, "space file")->required();
    measure->add_option("--family", ms_family, "latitude|level_set|neck_loop|arc");
    measure->add_option("--value", ms_value, "family parameter");
    measure->add_option("--scale", ms_scale, "band half-width (0 = auto)");
    measure->add_option("--k", ms_k, "measure dimension");

    // experiments -----------------------------------------------------------
    std::string cfg_path, out_dir, resolution;
    long long seed_override = -1;
    auto add_experiment = [&](const char* name, const char* desc) {
        auto* cmd = app.add_subcommand(name, desc);
        cmd->add_option("--config", cfg_path, "experiment config file")->required();
        cmd->add_option("--out", out_dir, "output directory override");
        cmd->add_option("--seed", seed_override, "seed override");
        cmd->add_option("--resolution", resolution, "low|med|high");
        return cmd;
    };
    auto* viso = add_experiment("verify-iso", "isoperimetric lower-bound experiment");
    auto* vvol = add_experiment("verify-vol", "ball volume lower-bound experiment");
    auto* vdmb = add_experiment("dumbbell", "necessity experiment on the dumbbell");
    auto* vpipe = add_experiment("pipeline", "full cover-nerve-projection pipeline");

    CLI11_PARSE(app, argc, argv);
    c1_set_threads(threads);

    if (gen->parsed()) {
        SpaceHandle space;
        c1_status rc = c1_space_generate(gen_kind.c_str(),
                                         gen_params.empty() ? nullptr : gen_params.data(),
                                         static_cast<int>(gen_params.size()), gen_samples,
                                         static_cast<unsigned long long>(gen_seed),
                                         &space.ptr);
        if (rc != C1_OK) return fail(rc, "gen");
        rc = c1_space_save(space.ptr, gen_out.c_str());
        if (rc != C1_OK) return fail(rc, "gen/save");
        std::printf("wrote %s: %d points, dim %d, graph scale %.6g, diameter %.6g\n",
                    gen_out.c_str(), c1_space_size(space.ptr),
                    c1_space_manifold_dim(space.ptr), c1_space_graph_scale(space.ptr),
                    c1_space_diameter(space.ptr));
        return 0;
    }

    if (net->parsed()) {
        SpaceHandle space;
        c1_status rc = c1_space_load(net_space.c_str(), &space.ptr);
        if (rc != C1_OK) return fail(rc, "net/load");
        int count = 0;
        rc = c1_net_build(space.ptr, net_sep, nullptr, 0, &count);
        if (rc != C1_OK) return fail(rc, "net");
        std::vector<int> centers(static_cast<std::size_t>(count));
        rc = c1_net_build(space.ptr, net_sep, centers.data(), count, &count);
        if (rc != C1_OK) return fail(rc, "net");
        std::printf("net: %d centers at separation %.6g\n", count, net_sep);
        for (int c : centers) std::printf("%d\n", c);
        return 0;
    }

    if (nerve->parsed()) {
        SpaceHandle space;
        c1_status rc = c1_space_load(nerve_space.c_str(), &space.ptr);
        if (rc != C1_OK) return fail(rc, "nerve/load");
        CoverHandle cover;
        rc = c1_cover_build(space.ptr, nerve_eps, &cover.ptr);
        if (rc != C1_OK) return fail(rc, "nerve/cover");
        c1_cover_stats stats;
        c1_cover_get_stats(cover.ptr, &stats);
        ComplexHandle complex;
        rc = c1_nerve_build(cover.ptr, &complex.ptr);
        if (rc != C1_OK) return fail(rc, "nerve");
        rc = c1_complex_save_json(complex.ptr, nerve_out.c_str());
        if (rc != C1_OK) return fail(rc, "nerve/save");
        std::printf("cover: %d elements, multiplicity %d, lebesgue >= %.6g (audited %.6g)\n",
                    stats.element_count, stats.multiplicity, stats.lebesgue,
                    stats.lebesgue_audited);
        std::printf("nerve: dim %d, %lld simplices -> %s\n", c1_complex_dim(complex.ptr),
                    c1_complex_count(complex.ptr, -1), nerve_out.c_str());
        return 0;
    }

    if (project->parsed()) {
        const c1_status rc =
            c1_project_file(prj_complex.c_str(), prj_set.c_str(), prj_k, prj_out.c_str());
        if (rc != C1_OK) return fail(rc, "project");
        std::printf("projection artifacts written under %s\n", prj_out.c_str());
        return 0;
    }

    if (measure->parsed()) {
        SpaceHandle space;
        c1_status rc = c1_space_load(ms_space.c_str(), &space.ptr);
        if (rc != C1_OK) return fail(rc, "measure/load");
        int count = 0;
        double scale_used = 0.0;
        rc = c1_select_family(space.ptr, ms_family.c_str(), ms_value, ms_scale, nullptr, 0,
                              &count, &scale_used);
        if (rc != C1_OK) return fail(rc, "measure/family");
        std::vector<int> idx(static_cast<std::size_t>(count));
        rc = c1_select_family(space.ptr, ms_family.c_str(), ms_value, ms_scale, idx.data(),
                              count, &count, &scale_used);
        if (rc != C1_OK) return fail(rc, "measure/family");
        c1_measure est;
        rc = c1_hausdorff_estimate(space.ptr, idx.data(), count, scale_used, ms_k, &est);
        if (rc != C1_OK) return fail(rc, "measure");
        c1_separation sep;
        rc = c1_separation_radius(space.ptr, idx.data(), count, scale_used, &sep);
        if (rc != C1_OK) return fail(rc, "measure/separation");
        std::printf("set %s(%.6g): %d points, scale %.6g\n", ms_family.c_str(), ms_value,
                    count, scale_used);
        std::printf("H_%d = %.6g (spread %.6g)\n", est.k, est.value, est.spread);
        std::printf("components %d, seprad %.6g, witnesses (%d, %d)\n", sep.components,
                    sep.seprad, sep.witness_x, sep.witness_y);
        return 0;
    }

    const char* experiment = viso->parsed()   ? "verify-iso"
                             : vvol->parsed() ? "verify-vol"
                             : vdmb->parsed() ? "dumbbell"
                             : vpipe->parsed() ? "pipeline"
                                               : nullptr;
    if (experiment) {
        int passed = 0;
        const c1_status rc = c1_run_experiment(
            experiment, cfg_path.c_str(), out_dir.empty() ? nullptr : out_dir.c_str(),
            seed_override, resolution.empty() ? nullptr : resolution.c_str(), threads,
            &passed);
        if (rc != C1_OK) return fail(rc, experiment);
        std::printf("%s: %s\n", experiment, passed ? "all invariants passed" : "FAILED");
        return passed ? 0 : 1;
    }
    return 0;
}
