#pragma once

#include <string>
#include <vector>

#include "codim1/config.hpp"
#include "codim1/cover.hpp"
#include "codim1/measure.hpp"

#include <json.hpp>

namespace codim1 {

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;
    std::string invariant;  // the module property this check traces to
};

struct ReportRow {
    std::string set_id;
    double measure = 0.0;   // H_{n-1} estimate
    double spread = 0.0;
    double seprad = 0.0;
    double r = 0.0;         // the radius entering the bound
    double ratio = 0.0;     // measure / r^{n-1}
    int witness = -1;       // homological certificate (-1 = not computed)
    int witness_fine = -1;  // at the second (finer or coarser) scale
    bool pass = true;
    std::string invariant;
};

struct VerificationReport {
    std::string experiment;
    int schema_version = 1;
    nlohmann::ordered_json environment;
    std::vector<ReportRow> rows;
    nlohmann::ordered_json derived;
    std::vector<CheckResult> checks;
    // Method substitutions recorded in every report.
    std::vector<std::string> notes;
    bool passed = true;

    void add_check(const std::string& name, bool pass, const std::string& detail,
                   const std::string& invariant);
    nlohmann::ordered_json to_json() const;
    // Writes report.json, tables/rows.csv, and any queued plots under dir.
    void write(const std::string& dir) const;

    struct Plot {
        std::string file;  // relative to plots/
        nlohmann::ordered_json spec;  // {title,xlabel,ylabel,series:[{name,x,y}]}
    };
    std::vector<Plot> plots;
    std::vector<std::pair<std::string, std::string>> extra_files;  // (relpath, content)
};

// Named set families on a generated manifold.
struct FamilySet {
    std::string id;
    SampleSet set;
    double value = 0.0;  // family parameter (colatitude, level, ...)
};
std::vector<FamilySet> build_family(const FiniteMetricSpace& space,
                                    const std::string& family,
                                    const std::vector<double>& values, double scale);

// Experiments. Each returns the full report; callers decide where to write.
VerificationReport verify_isoperimetric(const ExperimentConfig& config);
VerificationReport verify_volume(const ExperimentConfig& config);
VerificationReport dumbbell_necessity(const ExperimentConfig& config);
VerificationReport run_pipeline(const ExperimentConfig& config);

}  // namespace codim1
