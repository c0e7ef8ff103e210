// ============================================================================
// slicekit command line
//
// verify       run verification suites against a config, emit a report
// eval         apply one global operator to a power series at one point
// convergence  rerun suites over a budget ladder, emit refinement tables
//
// Exit codes: 0 all requested work passed, 1 a verification case failed,
// 2 usage or configuration error.
// ============================================================================

#include <array>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <slicekit/algebra.hpp>
#include <slicekit/config.hpp>
#include <slicekit/diffeo.hpp>
#include <slicekit/errors.hpp>
#include <slicekit/jets.hpp>
#include <slicekit/operators.hpp>
#include <slicekit/slice.hpp>
#include <slicekit/theorems.hpp>

namespace {

using namespace slicekit;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_out(const std::string& doc, const std::string& path) {
    if (path.empty()) {
        std::fputs(doc.c_str(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot write output file '" + path + "'");
    out << doc;
    if (!out) throw error("write to '" + path + "' failed");
}

// Comma-separated reals; the single value `k` is shorthand for the scalar
// coefficient k, 0, ..., 0.
std::vector<double> parse_reals(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw error("not a number: '" + item + "'");
        }
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (used != item.size()) throw error("not a number: '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw error("empty number list");
    return out;
}

std::vector<std::vector<double>> parse_coeffs(const std::string& fn, std::size_t width,
                                              const char* what) {
    std::vector<std::vector<double>> out;
    std::stringstream ss(fn);
    std::string item;
    while (std::getline(ss, item, '|')) {
        std::vector<double> c = parse_reals(item);
        if (c.size() == 1) c.resize(width, 0.0);
        if (c.size() != width)
            throw error(std::string(what) + " coefficient needs 1 or " + std::to_string(width) +
                        " components, got " + std::to_string(c.size()));
        out.push_back(std::move(c));
    }
    if (out.empty()) throw error("--fn needs at least one coefficient");
    return out;
}

// ============================================================================
// verify
// ============================================================================

struct CommonFlags {
    std::string config_path;
    std::vector<std::string> suites;
    std::string format = "text";
    std::string out_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "run configuration file");
    cmd->add_option("--suite", f.suites, "suite id (repeatable; default: all registered)");
    cmd->add_option("--format", f.format, "report format: text or csv")
        ->check(CLI::IsMember({"text", "csv"}));
    cmd->add_option("--out", f.out_path, "write the report here instead of stdout");
    cmd->add_option("--seed", f.seed, "override the run seed")->trigger_on_parse();
}

RunConfig load_config(const CommonFlags& f, bool seed_set) {
    RunConfig cfg;
    if (!f.config_path.empty()) cfg = parse_config(read_file(f.config_path));
    if (!f.suites.empty()) cfg.suites = f.suites;
    if (seed_set) cfg.seed = f.seed;
    for (const std::string& s : cfg.suites)
        if (!suite_registered(s)) throw error("unknown suite '" + s + "'");
    return cfg;
}

int run_verify(const CommonFlags& f, bool seed_set) {
    const RunConfig cfg = load_config(f, seed_set);
    const std::vector<VerificationReport> reports = run_suite(cfg);
    const std::string out = !f.out_path.empty() ? f.out_path : cfg.out_path;
    write_out(emit_reports(reports, f.format), out);
    for (const VerificationReport& r : reports)
        if (!r.pass) return 1;
    return 0;
}

// ============================================================================
// eval
// ============================================================================

struct EvalFlags {
    std::string op = "G";
    std::string algebra = "quaternion";
    int n = 3;
    std::string point;
    std::string fn;
    std::string side = "left";
    std::string family = "identity";
    std::vector<double> alpha{2, 2, 2};
    std::vector<double> r{1, 1, 1};
    std::vector<double> s{0, 0, 0};
    std::vector<double> c{1, 0, 0, 0};
    std::string out_path;
};

DiffeoMap eval_family(const EvalFlags& e) {
    if (e.family == "identity") return diffeo_identity(e.n);
    if (e.family == "affine") return diffeo_affine(e.r, e.s);
    if (e.family == "power") return diffeo_power(e.alpha);
    if (e.family == "exp") return diffeo_exp(e.n);
    if (e.family == "sin") return diffeo_sin(e.n);
    if (e.family == "log") return diffeo_log(e.n);
    if (e.family == "rotation") {
        if (e.n != 3) throw error("rotation family needs n = 3");
        if (e.c.size() != 4) throw error("--c needs 4 components");
        return diffeo_rotation(Quaternion{e.c[0], e.c[1], e.c[2], e.c[3]});
    }
    throw error("unknown family '" + e.family + "'");
}

int run_eval(const EvalFlags& e) {
    const Side side = (e.side == "right") ? Side::right : Side::left;
    std::ostringstream doc;
    doc.precision(17);

    if (e.algebra == "quaternion") {
        const std::vector<double> pt = parse_reals(e.point);
        if (pt.size() != 4) throw error("--point needs 4 components for quaternions");
        const Quaternion x{pt[0], pt[1], pt[2], pt[3]};
        QPowerSeries series;
        series.side = side;
        for (const auto& c : parse_coeffs(e.fn, 4, "quaternion"))
            series.coeffs.push_back(Quaternion{c[0], c[1], c[2], c[3]});
        const QJet jet = qjet_from_series(series);
        const DiffeoMap a = eval_family(e);
        Quaternion res;
        if (e.op == "G") res = apply_G(jet, x);
        else if (e.op == "Gr") res = apply_G_r(jet, x);
        else if (e.op == "Ha") res = apply_H_a(a, jet, x);
        else if (e.op == "Har") res = apply_H_ar(a, jet, x);
        else if (e.op == "Du") res = apply_D_u(a, jet, x);
        else throw error("unknown operator '" + e.op + "'");
        doc << res.w << " " << res.x << " " << res.y << " " << res.z << "\n";
    } else if (e.algebra == "clifford") {
        if (e.op == "Har") throw error("Har is quaternion-only");
        const std::vector<double> pt = parse_reals(e.point);
        if (pt.size() != static_cast<std::size_t>(e.n) + 1)
            throw error("--point needs n + 1 components for paravectors");
        const Paravector x{pt[0], std::vector<double>(pt.begin() + 1, pt.end())};
        MPowerSeries series;
        series.n = e.n;
        series.side = side;
        const std::size_t width = std::size_t{1} << e.n;
        for (const auto& c : parse_coeffs(e.fn, width, "multivector")) {
            Multivector m(e.n);
            for (std::size_t b = 0; b < width; ++b) m.coeff(static_cast<unsigned>(b)) = c[b];
            series.coeffs.push_back(m);
        }
        const MJet jet = mjet_from_series(series);
        const DiffeoMap a = eval_family(e);
        Multivector res(e.n);
        if (e.op == "G") res = apply_G(jet, x);
        else if (e.op == "Gr") res = apply_G_r(jet, x);
        else if (e.op == "Ha") res = apply_H_a(a, jet, x);
        else if (e.op == "Du") res = apply_D_u(a, jet, x);
        else throw error("unknown operator '" + e.op + "'");
        for (std::size_t b = 0; b < width; ++b)
            doc << (b ? " " : "") << res.coeff(static_cast<unsigned>(b));
        doc << "\n";
    } else {
        throw error("unknown algebra '" + e.algebra + "'");
    }
    write_out(doc.str(), e.out_path);
    return 0;
}

// ============================================================================
// convergence
// ============================================================================

struct ConvFlags {
    int levels = 2;
    int surface = 8;
    int radial = 6;
};

void scale_params(SuiteParams& p, int level, int surface, int radial, double fd0) {
    p.surface_nodes = surface << level;
    p.radial_nodes = radial << level;
    p.fd_step = fd0 / static_cast<double>(1 << level);
}

int run_convergence(const CommonFlags& f, bool seed_set, const ConvFlags& cv) {
    if (cv.levels < 2) throw error("--levels must be at least 2");
    const RunConfig base = load_config(f, seed_set);
    const double fd0 = base.defaults.fd_step;

    struct Row {
        std::string suite, case_id, quantity;
        std::vector<double> residuals;
    };
    std::vector<Row> rows;
    std::map<std::string, std::size_t> index;
    std::vector<std::array<int, 2>> budgets;

    for (int level = 0; level < cv.levels; ++level) {
        RunConfig cfg = base;
        scale_params(cfg.defaults, level, cv.surface, cv.radial, fd0);
        for (auto& kv : cfg.overrides) scale_params(kv.second, level, cv.surface, cv.radial, fd0);
        budgets.push_back({cfg.defaults.surface_nodes, cfg.defaults.radial_nodes});
        for (const VerificationReport& r : run_suite(cfg)) {
            const std::string key = r.suite + "\n" + r.case_id + "\n" + r.quantity;
            auto it = index.find(key);
            if (it == index.end()) {
                index.emplace(key, rows.size());
                rows.push_back({r.suite, r.case_id, r.quantity, {}});
                it = index.find(key);
            }
            Row& row = rows[it->second];
            row.residuals.resize(static_cast<std::size_t>(level) + 1,
                                 std::numeric_limits<double>::quiet_NaN());
            row.residuals.back() = r.residual;
        }
    }

    std::ostringstream doc;
    char buf[64];
    if (f.format == "csv") {
        doc << "suite,case,quantity,level,surface_nodes,radial_nodes,residual\n";
        for (const Row& row : rows)
            for (std::size_t l = 0; l < row.residuals.size(); ++l) {
                std::snprintf(buf, sizeof buf, "%.12g", row.residuals[l]);
                doc << row.suite << "," << row.case_id << "," << row.quantity << "," << l << ","
                    << budgets[l][0] << "," << budgets[l][1] << "," << buf << "\n";
            }
    } else {
        std::size_t ws = 5, wc = 4, wq = 8;
        for (const Row& row : rows) {
            ws = std::max(ws, row.suite.size());
            wc = std::max(wc, row.case_id.size());
            wq = std::max(wq, row.quantity.size());
        }
        doc << std::left << std::setw(static_cast<int>(ws) + 2) << "suite"
            << std::setw(static_cast<int>(wc) + 2) << "case"
            << std::setw(static_cast<int>(wq) + 2) << "quantity";
        for (const auto& b : budgets) {
            std::snprintf(buf, sizeof buf, "r[%dx%d]", b[0], b[1]);
            doc << std::setw(20) << buf;
        }
        doc << "gain\n";
        for (const Row& row : rows) {
            doc << std::setw(static_cast<int>(ws) + 2) << row.suite
                << std::setw(static_cast<int>(wc) + 2) << row.case_id
                << std::setw(static_cast<int>(wq) + 2) << row.quantity;
            for (double r : row.residuals) {
                std::snprintf(buf, sizeof buf, "%.6g", r);
                doc << std::setw(20) << buf;
            }
            const std::size_t m = row.residuals.size();
            if (m >= 2 && row.residuals[m - 1] != 0.0) {
                std::snprintf(buf, sizeof buf, "%.3g", row.residuals[m - 2] / row.residuals[m - 1]);
                doc << buf;
            } else {
                doc << "exact";
            }
            doc << "\n";
        }
    }
    const std::string out = !f.out_path.empty() ? f.out_path : base.out_path;
    write_out(doc.str(), out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"slicekit: global operators of slice analysis, verified numerically"};
    app.require_subcommand(1);

    CommonFlags vf;
    bool v_seed_set = false;
    CLI::App* verify = app.add_subcommand("verify", "run verification suites");
    add_common(verify, vf);
    verify->get_option("--seed")->each([&](const std::string&) { v_seed_set = true; });

    EvalFlags ef;
    CLI::App* eval = app.add_subcommand("eval", "apply one operator at one point");
    eval->add_option("--op", ef.op, "G, Gr, Ha, Har, or Du")
        ->check(CLI::IsMember({"G", "Gr", "Ha", "Har", "Du"}));
    eval->add_option("--algebra", ef.algebra, "quaternion or clifford")
        ->check(CLI::IsMember({"quaternion", "clifford"}));
    eval->add_option("--n", ef.n, "Clifford vector dimension")->check(CLI::Range(1, 8));
    eval->add_option("--point", ef.point, "evaluation point, comma reals")->required();
    eval->add_option("--fn", ef.fn, "series coefficients c0|c1|..., each comma reals")->required();
    eval->add_option("--side", ef.side, "series side")->check(CLI::IsMember({"left", "right"}));
    eval->add_option("--family", ef.family, "diffeomorphism family for Ha/Har/Du");
    eval->add_option("--alpha", ef.alpha, "power family exponents")->delimiter(',');
    eval->add_option("--r", ef.r, "affine family scales")->delimiter(',');
    eval->add_option("--s", ef.s, "affine family shifts")->delimiter(',');
    eval->add_option("--c", ef.c, "rotation unit quaternion")->delimiter(',');
    eval->add_option("--out", ef.out_path, "write the result here instead of stdout");

    CommonFlags cf;
    bool c_seed_set = false;
    ConvFlags cvf;
    CLI::App* conv = app.add_subcommand("convergence", "emit refinement tables");
    add_common(conv, cf);
    conv->get_option("--seed")->each([&](const std::string&) { c_seed_set = true; });
    conv->add_option("--levels", cvf.levels, "budget doublings to run")->check(CLI::Range(2, 6));
    conv->add_option("--surface", cvf.surface, "base per-angle surface nodes")
        ->check(CLI::Range(2, 128));
    conv->add_option("--radial", cvf.radial, "base radial nodes")->check(CLI::Range(1, 128));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return run_verify(vf, v_seed_set);
        if (eval->parsed()) return run_eval(ef);
        return run_convergence(cf, c_seed_set, cvf);
    } catch (const error& e) {
        std::fprintf(stderr, "slicekit: %s\n", e.what());
        return 2;
    }
}
