#include "codim1/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "codim1/errors.hpp"

namespace codim1 {

nlohmann::ordered_json complex_to_json(const SimplicialComplex& complex) {
    nlohmann::ordered_json j;
    j["schema"] = "codim1-nerve/1";
    j["vertex_count"] = complex.vertex_count();
    nlohmann::ordered_json simplices = nlohmann::ordered_json::array();
    for (int d = 0; d <= complex.dim(); ++d) {
        for (const auto& s : complex.simplices(d)) simplices.push_back(s);
    }
    j["simplices"] = simplices;
    return j;
}

SimplicialComplex complex_from_json(const nlohmann::json& j) {
    if (j.value("schema", "") != "codim1-nerve/1") {
        throw io_error("not a codim1-nerve/1 document");
    }
    SimplicialComplex complex(j.value("vertex_count", 0));
    for (const auto& s : j.at("simplices")) {
        complex.insert_closed(s.get<Simplex>());
    }
    return complex;
}

nlohmann::ordered_json complex_set_to_json(const ComplexSampleSet& set) {
    nlohmann::ordered_json j;
    j["schema"] = "codim1-bset/1";
    j["k"] = set.k;
    j["scale"] = set.scale;
    nlohmann::ordered_json points = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < set.points.size(); ++i) {
        nlohmann::ordered_json p;
        p["simplex"] = set.points[i].simplex;
        p["coords"] = set.points[i].coords;
        p["weight"] = set.weights.empty() ? 1.0 : set.weights[i];
        points.push_back(p);
    }
    j["points"] = points;
    return j;
}

ComplexSampleSet complex_set_from_json(const nlohmann::json& j) {
    if (j.value("schema", "") != "codim1-bset/1") {
        throw io_error("not a codim1-bset/1 document");
    }
    ComplexSampleSet set;
    set.k = j.at("k").get<int>();
    set.scale = j.at("scale").get<double>();
    for (const auto& p : j.at("points")) {
        BarycentricPoint bp;
        bp.simplex = p.at("simplex").get<Simplex>();
        bp.coords = p.at("coords").get<std::vector<double>>();
        bp.validate();
        set.points.push_back(std::move(bp));
        set.weights.push_back(p.value("weight", 1.0));
    }
    return set;
}

nlohmann::ordered_json sample_set_to_json(const SampleSet& set) {
    nlohmann::ordered_json j;
    j["schema"] = "codim1-set/1";
    j["scale"] = set.scale;
    switch (set.role) {
        case SetRole::kSeparatingSet: j["role"] = "separating_set"; break;
        case SetRole::kRegion: j["role"] = "region"; break;
        case SetRole::kLevelSet: j["role"] = "level_set"; break;
    }
    j["indices"] = set.indices;
    return j;
}

SampleSet sample_set_from_json(const nlohmann::json& j) {
    if (j.value("schema", "") != "codim1-set/1") {
        throw io_error("not a codim1-set/1 document");
    }
    SampleSet set;
    set.scale = j.at("scale").get<double>();
    const std::string role = j.value("role", "separating_set");
    set.role = role == "region" ? SetRole::kRegion
               : role == "level_set" ? SetRole::kLevelSet
                                     : SetRole::kSeparatingSet;
    set.indices = j.at("indices").get<std::vector<int>>();
    return set;
}

nlohmann::ordered_json nerve_map_to_json(const SimplicialComplex& complex,
                                         const NerveMap& map) {
    nlohmann::ordered_json j = complex_to_json(complex);
    j["schema"] = "codim1-nerve-map/1";
    j["lip_estimate"] = map.lip_estimate;
    j["lip_estimate_euclidean"] = map.lip_estimate_euclidean;
    j["lip_bound"] = map.lip_bound;
    nlohmann::ordered_json images = nlohmann::ordered_json::array();
    for (const auto& p : map.images) {
        nlohmann::ordered_json e;
        e["simplex"] = p.simplex;
        e["coords"] = p.coords;
        images.push_back(e);
    }
    j["barycentric_images"] = images;
    return j;
}

nlohmann::ordered_json glued_map_to_json(const GluedMap& g) {
    nlohmann::ordered_json j;
    j["schema"] = "codim1-glued-map/1";
    j["epsilon"] = g.epsilon;
    j["L"] = g.L;
    j["built_dim"] = g.built_dim;
    j["vertex_images"] = g.vertex_images;
    nlohmann::ordered_json table = nlohmann::ordered_json::array();
    for (const auto& [s, d] : g.diam_table) {
        nlohmann::ordered_json row;
        row["simplex"] = s;
        row["diam"] = d;
        row["bound"] = GluedMap::diam_bound(static_cast<int>(s.size()) - 1, g.L, g.epsilon);
        table.push_back(row);
    }
    j["diam_table"] = table;
    nlohmann::ordered_json flagged = nlohmann::ordered_json::array();
    for (const auto& s : g.flagged) flagged.push_back(s);
    j["flagged"] = flagged;
    return j;
}

nlohmann::ordered_json projection_log_to_json(const ProjectionLog& log) {
    nlohmann::ordered_json j;
    j["schema"] = "codim1-projection-log/1";
    j["initial_measure"] = log.initial_measure;
    j["final_measure"] = log.final_measure;
    j["cumulative_growth"] = log.cumulative_growth;
    j["measure_precondition_ok"] = log.measure_precondition_ok;
    j["smoothing_skipped"] = log.smoothing_skipped;
    nlohmann::ordered_json stages = nlohmann::ordered_json::array();
    for (std::size_t s = 0; s < log.stage_dims.size(); ++s) {
        nlohmann::ordered_json e;
        e["dim"] = log.stage_dims[s];
        e["measure_before"] = log.stage_measure_before[s];
        e["measure_after"] = log.stage_measure_after[s];
        e["growth"] = log.stage_growth[s];
        stages.push_back(e);
    }
    j["stages"] = stages;
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (const auto& rec : log.per_simplex) {
        nlohmann::ordered_json e;
        e["dim"] = rec.stage_dim;
        e["simplex"] = rec.simplex;
        e["center"] = rec.center.coords;
        e["moved"] = rec.moved_points;
        e["measure_before"] = rec.measure_before;
        e["measure_after"] = rec.measure_after;
        e["growth"] = rec.growth;
        cells.push_back(e);
    }
    j["cells"] = cells;
    nlohmann::ordered_json constants = nlohmann::ordered_json::array();
    for (const auto& row : log.constants) {
        nlohmann::ordered_json e;
        e["k"] = row.k;
        e["n"] = row.n;
        e["formula"] = row.formula;
        e["base"] = row.base;
        e["empirical"] = row.empirical;
        constants.push_back(e);
    }
    j["constants"] = constants;
    return j;
}

std::string projection_log_to_csv(const ProjectionLog& log) {
    std::ostringstream out;
    out << "stage_dim,simplex,moved,measure_before,measure_after,growth\n";
    char buf[160];
    for (const auto& rec : log.per_simplex) {
        std::ostringstream simplex;
        for (std::size_t i = 0; i < rec.simplex.size(); ++i) {
            simplex << (i ? " " : "") << rec.simplex[i];
        }
        std::snprintf(buf, sizeof(buf), ",%d,%.17g,%.17g,%.17g\n", rec.moved_points,
                      rec.measure_before, rec.measure_after, rec.growth);
        out << rec.stage_dim << ",\"" << simplex.str() << "\"" << buf;
    }
    return out.str();
}

void write_json(const nlohmann::ordered_json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw io_error(path + ": " + e.what());
    }
    return j;
}

}  // namespace codim1
