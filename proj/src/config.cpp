#include "codim1/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "codim1/errors.hpp"

namespace codim1 {

namespace {

std::vector<double> parse_doubles(const std::string& text, const std::string& where) {
    std::vector<double> out;
    std::istringstream ss(text);
    std::string tok;
    while (ss >> tok) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw invalid_argument(where + ": not a number: '" + tok + "'");
        }
    }
    return out;
}

long long parse_int(const std::string& text, const std::string& where) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw invalid_argument(where + ": not an integer: '" + text + "'");
    }
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

}  // namespace

ExperimentConfig ExperimentConfig::from_string(const std::string& text,
                                               const std::string& name) {
    ExperimentConfig cfg;
    cfg.family_values.clear();
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        std::ostringstream where;
        where << name << ":" << line_no;
        if (stripped.front() == '[') {
            if (stripped.back() != ']') throw invalid_argument(where.str() + ": bad section");
            section = stripped.substr(1, stripped.size() - 2);
            if (section != "manifold" && section != "sets" && section != "cover" &&
                section != "volume" && section != "dumbbell" && section != "run" &&
                section != "output") {
                throw invalid_argument(where.str() + ": unknown section [" + section + "]");
            }
            continue;
        }
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw invalid_argument(where.str() + ": expected key = value");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        const std::string ctx = where.str() + " (" + key + ")";

        if (section == "manifold") {
            if (key == "kind") {
                cfg.manifold.kind = value;
            } else if (key == "params") {
                cfg.manifold.params = parse_doubles(value, ctx);
            } else if (key == "samples") {
                cfg.manifold.sample_count = static_cast<int>(parse_int(value, ctx));
            } else if (key == "seed") {
                cfg.manifold.seed = static_cast<std::uint64_t>(parse_int(value, ctx));
            } else {
                throw invalid_argument(ctx + ": unknown key in [manifold]");
            }
        } else if (section == "sets") {
            if (key == "family") {
                cfg.family = value;
            } else if (key == "values") {
                cfg.family_values = parse_doubles(value, ctx);
            } else if (key == "scale") {
                cfg.set_scale = parse_doubles(value, ctx).at(0);
            } else if (key == "witness_scale") {
                cfg.witness_scale = parse_doubles(value, ctx).at(0);
            } else {
                throw invalid_argument(ctx + ": unknown key in [sets]");
            }
        } else if (section == "cover") {
            if (key == "epsilon") {
                cfg.cover_epsilon = parse_doubles(value, ctx).at(0);
            } else {
                throw invalid_argument(ctx + ": unknown key in [cover]");
            }
        } else if (section == "volume") {
            if (key == "radii") {
                cfg.radii = parse_doubles(value, ctx);
            } else if (key == "bands") {
                cfg.bands = static_cast<int>(parse_int(value, ctx));
            } else if (key == "centers") {
                cfg.centers = static_cast<int>(parse_int(value, ctx));
            } else {
                throw invalid_argument(ctx + ": unknown key in [volume]");
            }
        } else if (section == "dumbbell") {
            if (key == "epsilons") {
                cfg.dumbbell_epsilons = parse_doubles(value, ctx);
            } else {
                throw invalid_argument(ctx + ": unknown key in [dumbbell]");
            }
        } else if (section == "run") {
            if (key == "doubling_trials") {
                cfg.doubling_trials = static_cast<int>(parse_int(value, ctx));
            } else if (key == "threads") {
                cfg.threads = static_cast<int>(parse_int(value, ctx));
            } else if (key == "resolution") {
                if (value != "low" && value != "med" && value != "high") {
                    throw invalid_argument(ctx + ": resolution must be low|med|high");
                }
                cfg.resolution = value;
            } else {
                throw invalid_argument(ctx + ": unknown key in [run]");
            }
        } else if (section == "output") {
            if (key == "dir") {
                cfg.out_dir = value;
            } else {
                throw invalid_argument(ctx + ": unknown key in [output]");
            }
        } else {
            throw invalid_argument(where.str() + ": key outside of any section");
        }
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str(), path);
}

int ExperimentConfig::effective_samples() const {
    if (resolution == "low") return std::max(1, manifold.sample_count / 2);
    if (resolution == "high") return manifold.sample_count * 2;
    return manifold.sample_count;
}

std::string ExperimentConfig::describe() const {
    std::ostringstream out;
    char buf[64];
    out << "[manifold]\nkind = " << manifold.kind << "\nparams =";
    for (double p : manifold.params) {
        std::snprintf(buf, sizeof(buf), " %.17g", p);
        out << buf;
    }
    out << "\nsamples = " << manifold.sample_count << "\nseed = " << manifold.seed << "\n";
    out << "[sets]\nfamily = " << family << "\nvalues =";
    for (double v : family_values) {
        std::snprintf(buf, sizeof(buf), " %.17g", v);
        out << buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", set_scale);
    out << "\nscale = " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", witness_scale);
    out << "witness_scale = " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", cover_epsilon);
    out << "[cover]\nepsilon = " << buf << "\n";
    out << "[volume]\nradii =";
    for (double r : radii) {
        std::snprintf(buf, sizeof(buf), " %.17g", r);
        out << buf;
    }
    out << "\nbands = " << bands << "\ncenters = " << centers << "\n";
    out << "[dumbbell]\nepsilons =";
    for (double e : dumbbell_epsilons) {
        std::snprintf(buf, sizeof(buf), " %.17g", e);
        out << buf;
    }
    out << "\n[run]\ndoubling_trials = " << doubling_trials << "\nthreads = " << threads
        << "\nresolution = " << resolution << "\n";
    out << "[output]\ndir = " << out_dir << "\n";
    return out.str();
}

}  // namespace codim1
