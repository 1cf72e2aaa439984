#pragma once

#include <string>

#include "codim1/deformation.hpp"
#include "codim1/measure.hpp"
#include "codim1/nerve_maps.hpp"
#include "codim1/simplicial.hpp"

#include <json.hpp>

namespace codim1 {

// Stable JSON schemas (field names documented in docs/FORMATS.md).
nlohmann::ordered_json complex_to_json(const SimplicialComplex& complex);
SimplicialComplex complex_from_json(const nlohmann::json& j);

nlohmann::ordered_json complex_set_to_json(const ComplexSampleSet& set);
ComplexSampleSet complex_set_from_json(const nlohmann::json& j);

nlohmann::ordered_json sample_set_to_json(const SampleSet& set);
SampleSet sample_set_from_json(const nlohmann::json& j);

nlohmann::ordered_json nerve_map_to_json(const SimplicialComplex& complex,
                                         const NerveMap& map);
nlohmann::ordered_json glued_map_to_json(const GluedMap& g);

nlohmann::ordered_json projection_log_to_json(const ProjectionLog& log);
std::string projection_log_to_csv(const ProjectionLog& log);

void write_json(const nlohmann::ordered_json& j, const std::string& path);
nlohmann::json read_json(const std::string& path);

}  // namespace codim1
