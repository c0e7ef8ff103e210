#include "slicekit/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>

#include "slicekit/errors.hpp"

namespace slicekit {

namespace {

// ============================================================================
// Lexing helpers
// ============================================================================

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(trim(cur));
    return out;
}

double parse_real(const std::string& s, int line) {
    try {
        size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw config_error(line, "expected a real number, got '" + s + "'");
    }
}

std::vector<double> parse_reals(const std::string& s, int line) {
    std::vector<double> out;
    for (const std::string& tok : split_commas(s)) out.push_back(parse_real(tok, line));
    return out;
}

int parse_int(const std::string& s, int line, int lo) {
    try {
        size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        if (v < lo) throw config_error(line, "value " + s + " below minimum " + std::to_string(lo));
        return static_cast<int>(v);
    } catch (const config_error&) {
        throw;
    } catch (const std::exception&) {
        throw config_error(line, "expected an integer, got '" + s + "'");
    }
}

bool parse_bool(const std::string& s, int line) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw config_error(line, "expected true|false, got '" + s + "'");
}

template <size_t N>
std::array<double, N> parse_fixed(const std::string& s, int line) {
    std::vector<double> v = parse_reals(s, line);
    if (v.size() != N)
        throw config_error(line, "expected " + std::to_string(N) + " reals, got " +
                                     std::to_string(v.size()));
    std::array<double, N> out{};
    std::copy(v.begin(), v.end(), out.begin());
    return out;
}

const std::vector<std::string> kFamilies{"identity", "affine", "power", "exp",
                                         "sin",      "log",    "rotation"};

// Applies one suite-parameter key; returns false if the key is not one.
bool apply_suite_key(SuiteParams& p, const std::string& key, const std::string& val, int line) {
    if (key == "a") {
        if (std::find(kFamilies.begin(), kFamilies.end(), val) == kFamilies.end())
            throw config_error(line, "unknown diffeomorphism family '" + val + "'");
        p.family = val;
    } else if (key == "alpha") {
        p.alpha = parse_reals(val, line);
    } else if (key == "r") {
        p.r = parse_reals(val, line);
    } else if (key == "s") {
        p.s = parse_reals(val, line);
    } else if (key == "c") {
        p.c = parse_fixed<4>(val, line);
    } else if (key == "moebius") {
        p.moebius = parse_fixed<16>(val, line);
    } else if (key == "domain_center") {
        p.domain_center = parse_fixed<4>(val, line);
    } else if (key == "domain_radius") {
        p.domain_radius = parse_real(val, line);
        if (p.domain_radius <= 0) throw config_error(line, "domain_radius must be positive");
    } else if (key == "contour_nodes") {
        p.contour_nodes = parse_int(val, line, 8);
    } else if (key == "surface_nodes") {
        p.surface_nodes = parse_int(val, line, 2);
    } else if (key == "radial_nodes") {
        p.radial_nodes = parse_int(val, line, 1);
    } else if (key == "fd_step") {
        p.fd_step = parse_real(val, line);
        if (p.fd_step <= 0) throw config_error(line, "fd_step must be positive");
    } else if (key == "richardson") {
        p.richardson = parse_bool(val, line);
    } else {
        return false;
    }
    return true;
}

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string join_reals(const double* v, size_t n) {
    std::string out;
    for (size_t i = 0; i < n; ++i) {
        if (i) out += ", ";
        out += fmt_real(v[i]);
    }
    return out;
}

void print_params(std::ostringstream& os, const SuiteParams& p) {
    if (!p.family.empty()) os << "a = " << p.family << "\n";
    os << "alpha = " << join_reals(p.alpha.data(), p.alpha.size()) << "\n";
    os << "r = " << join_reals(p.r.data(), p.r.size()) << "\n";
    os << "s = " << join_reals(p.s.data(), p.s.size()) << "\n";
    os << "c = " << join_reals(p.c.data(), p.c.size()) << "\n";
    os << "moebius = " << join_reals(p.moebius.data(), p.moebius.size()) << "\n";
    os << "domain_center = " << join_reals(p.domain_center.data(), p.domain_center.size()) << "\n";
    os << "domain_radius = " << fmt_real(p.domain_radius) << "\n";
    os << "contour_nodes = " << p.contour_nodes << "\n";
    os << "surface_nodes = " << p.surface_nodes << "\n";
    os << "radial_nodes = " << p.radial_nodes << "\n";
    os << "fd_step = " << fmt_real(p.fd_step) << "\n";
    os << "richardson = " << (p.richardson ? "true" : "false") << "\n";
}

} // namespace

// ============================================================================
// Registry
// ============================================================================

const std::vector<std::string>& suite_registry() {
    static const std::vector<std::string> kSuites{
        "borel_pompeiu_du", "borel_pompeiu_g", "borel_pompeiu_ha", "cauchy_du",
        "cauchy_g",         "cauchy_ha",       "conformal_g",      "conformal_ha",
        "du_relation",      "kernel_membership", "power_series",   "representation",
        "slice_cauchy",     "splitting",       "stokes_du",        "stokes_g",
        "stokes_ha"};
    return kSuites;
}

bool suite_registered(const std::string& name) {
    const auto& reg = suite_registry();
    return std::find(reg.begin(), reg.end(), name) != reg.end();
}

// ============================================================================
// Parsing
// ============================================================================

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::string section; // empty = top level
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        size_t hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;

        if (s.front() == '[') {
            if (s.back() != ']') throw config_error(line, "unterminated section header");
            std::string name = trim(s.substr(1, s.size() - 2));
            if (name.rfind("suite.", 0) != 0)
                throw config_error(line, "section must be [suite.<name>], got [" + name + "]");
            std::string suite = name.substr(6);
            if (!suite_registered(suite))
                throw config_error(line, "unknown suite '" + suite + "'");
            section = suite;
            if (!cfg.overrides.count(suite)) cfg.overrides[suite] = cfg.defaults;
            continue;
        }

        size_t eq = s.find('=');
        if (eq == std::string::npos) throw config_error(line, "expected 'key = value'");
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key.empty()) throw config_error(line, "empty key");
        if (val.empty()) throw config_error(line, "empty value for '" + key + "'");

        if (section.empty()) {
            if (key == "suites") {
                cfg.suites.clear();
                for (const std::string& name : split_commas(val)) {
                    if (!suite_registered(name))
                        throw config_error(line, "unknown suite '" + name + "'");
                    cfg.suites.push_back(name);
                }
                continue;
            }
            if (key == "seed") {
                try {
                    size_t used = 0;
                    cfg.seed = std::stoull(val, &used);
                    if (used != val.size()) throw std::invalid_argument(val);
                } catch (const std::exception&) {
                    throw config_error(line, "expected an unsigned integer, got '" + val + "'");
                }
                continue;
            }
            if (key == "out") {
                cfg.out_path = val;
                continue;
            }
            if (apply_suite_key(cfg.defaults, key, val, line)) continue;
            throw config_error(line, "unknown key '" + key + "'");
        }

        if (key == "suites" || key == "seed" || key == "out")
            throw config_error(line, "'" + key + "' is only valid at the top level");
        if (apply_suite_key(cfg.overrides[section], key, val, line)) continue;
        throw config_error(line, "unknown key '" + key + "'");
    }
    return cfg;
}

SuiteParams effective_params(const RunConfig& cfg, const std::string& suite) {
    auto it = cfg.overrides.find(suite);
    return it == cfg.overrides.end() ? cfg.defaults : it->second;
}

std::string print_config(const RunConfig& cfg) {
    std::ostringstream os;
    if (!cfg.suites.empty()) {
        os << "suites = ";
        for (size_t i = 0; i < cfg.suites.size(); ++i)
            os << (i ? ", " : "") << cfg.suites[i];
        os << "\n";
    }
    os << "seed = " << cfg.seed << "\n";
    if (!cfg.out_path.empty()) os << "out = " << cfg.out_path << "\n";
    print_params(os, cfg.defaults);
    for (const auto& [suite, params] : cfg.overrides) {
        os << "[suite." << suite << "]\n";
        print_params(os, params);
    }
    return os.str();
}

DiffeoMap family_from_params(const SuiteParams& p) {
    if (p.family.empty() || p.family == "identity") return diffeo_identity(3);
    if (p.family == "affine") return diffeo_affine(p.r, p.s);
    if (p.family == "power") return diffeo_power(p.alpha);
    if (p.family == "exp") return diffeo_exp(3);
    if (p.family == "sin") return diffeo_sin(3);
    if (p.family == "log") return diffeo_log(3);
    if (p.family == "rotation")
        return diffeo_rotation(Quaternion{p.c[0], p.c[1], p.c[2], p.c[3]});
    throw contract_error("family_from_params: unknown family " + p.family);
}

} // namespace slicekit
