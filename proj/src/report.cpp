#include <filesystem>
#include <fstream>

#include "codim1/errors.hpp"
#include "codim1/experiments.hpp"
#include "internal/svg_plot.hpp"

namespace codim1 {

void VerificationReport::add_check(const std::string& name, bool pass,
                                   const std::string& detail, const std::string& invariant) {
    checks.push_back({name, pass, detail, invariant});
    passed = passed && pass;
}

nlohmann::ordered_json VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = "codim1-report/" + std::to_string(schema_version);
    j["experiment"] = experiment;
    j["environment"] = environment;
    nlohmann::ordered_json jrows = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json jr;
        jr["set"] = r.set_id;
        jr["measure"] = r.measure;
        jr["spread"] = r.spread;
        jr["seprad"] = r.seprad;
        jr["r"] = r.r;
        jr["ratio"] = r.ratio;
        jr["witness"] = r.witness;
        jr["witness_fine"] = r.witness_fine;
        jr["pass"] = r.pass;
        jr["invariant"] = r.invariant;
        jrows.push_back(jr);
    }
    j["rows"] = jrows;
    j["derived"] = derived;
    nlohmann::ordered_json jchecks = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        jc["detail"] = c.detail;
        jc["invariant"] = c.invariant;
        jchecks.push_back(jc);
    }
    j["checks"] = jchecks;
    j["notes"] = notes;
    j["passed"] = passed;
    return j;
}

void VerificationReport::write(const std::string& dir) const {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(fs::path(dir) / "tables", ec);
    fs::create_directories(fs::path(dir) / "plots", ec);

    {
        std::ofstream out(fs::path(dir) / "report.json");
        if (!out) throw io_error("cannot write report.json under " + dir);
        out << to_json().dump(2) << "\n";
    }
    {
        std::ofstream out(fs::path(dir) / "tables" / "rows.csv");
        out << "set,measure,spread,seprad,r,ratio,witness,witness_fine,pass,invariant\n";
        char buf[256];
        for (const auto& r : rows) {
            std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d,%d,",
                          r.set_id.c_str(), r.measure, r.spread, r.seprad, r.r, r.ratio,
                          r.witness, r.witness_fine, r.pass ? 1 : 0);
            out << buf << '"' << r.invariant << '"' << "\n";
        }
    }
    for (const auto& plot : plots) {
        detail::LinePlot lp;
        lp.title = plot.spec.value("title", "");
        lp.xlabel = plot.spec.value("xlabel", "");
        lp.ylabel = plot.spec.value("ylabel", "");
        if (plot.spec.contains("series")) {
            for (const auto& s : plot.spec["series"]) {
                detail::PlotSeries ser;
                ser.name = s.value("name", "");
                for (const auto& v : s["x"]) ser.x.push_back(v.get<double>());
                for (const auto& v : s["y"]) ser.y.push_back(v.get<double>());
                lp.series.push_back(std::move(ser));
            }
        }
        lp.write((fs::path(dir) / "plots" / plot.file).string());
    }
    for (const auto& [rel, content] : extra_files) {
        const fs::path p = fs::path(dir) / rel;
        fs::create_directories(p.parent_path(), ec);
        std::ofstream out(p);
        if (!out) throw io_error("cannot write " + p.string());
        out << content;
    }
}

}  // namespace codim1
