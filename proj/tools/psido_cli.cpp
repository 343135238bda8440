// Command-line workbench: residues, traces, determinants, multiplicative
// anomalies, and the batch verification suites, over operators given either
// inline (--op, an expression in n or in x/xi) or as JSON specs (--config).

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "psido/verify.hpp"

namespace {

using namespace psido;

struct CommonFlags {
    std::string op_expr;
    std::string config_path;
    std::string weight_expr;
    int depth = 0;
    int grid = 0;
    int modes = 4096;
    double tol = 0;
    std::string out;
    std::string format = "json";
};

void add_operator_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--op", f.op_expr, "inline operator expression (n, or x/xi)");
    cmd->add_option("--config", f.config_path, "JSON operator/config file");
    cmd->add_option("--depth", f.depth, "expansion depth override");
    cmd->add_option("--grid", f.grid, "x-grid override (variable symbols)");
    cmd->add_option("--modes", f.modes, "mode cap for spectral/mode sums");
    cmd->add_option("--tol", f.tol, "fail when the error estimate exceeds this");
    cmd->add_option("--out", f.out, "output file or directory");
    cmd->add_option("--format", f.format, "json|csv|plain")
        ->check(CLI::IsMember({"json", "csv", "plain"}));
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    return Json::parse(in);
}

Json spec_from_expr(const std::string& expr) {
    ExprPtr ast = parse_expression(expr);
    Json spec;
    spec["kind"] =
        uses_variable(ast, "x") || uses_variable(ast, "xi") ? "variable_symbol"
                                                            : "matrix_multiplier";
    spec["entries"] = Json::array({Json::array({expr})});
    return spec;
}

Operator build_operator(const CommonFlags& f, const Json* inline_spec = nullptr) {
    Json spec;
    if (inline_spec)
        spec = *inline_spec;
    else if (!f.op_expr.empty())
        spec = spec_from_expr(f.op_expr);
    else if (!f.config_path.empty())
        spec = load_json(f.config_path);
    else
        throw std::runtime_error("provide --op EXPR or --config FILE");
    if (f.depth > 0) spec["depth"] = f.depth;
    if (f.grid > 0) spec["grid"] = f.grid;
    return operator_from_json(spec);
}

TraceOptions trace_options(const Operator& a, const CommonFlags& f) {
    TraceOptions t;
    t.flavor = a.is_multiplier() ? TraceFlavor::ModeSum : TraceFlavor::CutoffIntegral;
    t.modes = f.modes;
    return t;
}

void emit(const Json& payload, const CommonFlags& f) {
    std::string text = payload.dump(2) + "\n";
    if (f.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream outf(f.out);
        if (!outf) throw std::runtime_error("cannot write: " + f.out);
        outf << text;
    }
}

std::string plain(cd v) {
    char buf[64];
    if (std::abs(v.imag()) <= 1e-9 * std::max(1.0, std::abs(v.real()))) {
        std::snprintf(buf, sizeof(buf), "%.7f", v.real());
    } else {
        std::snprintf(buf, sizeof(buf), "%.7f%+.7fi", v.real(), v.imag());
    }
    return buf;
}

int run_residue(const CommonFlags& f) {
    Operator a = build_operator(f);
    cd r = residue(a.symbol);
    if (f.format == "plain" || f.out.empty()) {
        std::cout << plain(r) << "\n";
    } else {
        Json payload;
        payload["operator"] = a.name;
        payload["residue"] = cd_to_json(r);
        emit(payload, f);
    }
    return 0;
}

int run_trace(const CommonFlags& f) {
    Operator a = build_operator(f);
    Json payload;
    payload["operator"] = a.name;
    double err = 0;
    cd value;
    if (!f.weight_expr.empty()) {
        Json wspec = spec_from_expr(f.weight_expr);
        Operator q = build_operator(f, &wspec);
        value = weighted_trace(a.symbol, q, trace_options(a, f));
        payload["weight"] = q.name;
        payload["weighted_trace"] = cd_to_json(value);
    } else {
        TraceResult tr = canonical_trace(a.symbol, trace_options(a, f));
        value = tr.value;
        err = tr.error_estimate;
        payload["flavor"] = a.is_multiplier() ? "mode_sum" : "cutoff_integral";
        payload["trace"] = cd_to_json(tr.value);
        payload["error_estimate"] = fmt17(tr.error_estimate);
        payload["obstruction"] = tr.obstruction;
    }
    if (f.format == "plain")
        std::cout << plain(value) << "\n";
    else
        emit(payload, f);
    if (f.tol > 0 && err > f.tol) {
        std::cerr << "error estimate " << err << " exceeds --tol " << f.tol << "\n";
        return 2;
    }
    return 0;
}

int run_logdet(const CommonFlags& f) {
    Operator a = build_operator(f);
    Json payload;
    payload["operator"] = a.name;
    cd value;
    if (!f.weight_expr.empty()) {
        Json wspec = spec_from_expr(f.weight_expr);
        Operator q = build_operator(f, &wspec);
        value = log_det_weighted(a, q, trace_options(a, f));
        payload["weight"] = q.name;
        payload["log_det_weighted"] = cd_to_json(value);
    } else {
        value = log_det_zeta_local(a, trace_options(a, f));
        payload["log_det_zeta_local"] = cd_to_json(value);
        payload["det_zeta_local"] = cd_to_json(std::exp(value));
        if (a.is_multiplier()) {
            SpectralOptions so;
            so.modes = f.modes;
            cd sp = -zeta_prime_zero(a, so);
            payload["log_det_zeta_spectral"] = cd_to_json(sp);
            payload["discrepancy"] = fmt17(std::abs(value - sp));
        }
    }
    if (f.format == "plain")
        std::cout << plain(value) << "\n";
    else
        emit(payload, f);
    return 0;
}

int run_anomaly(const CommonFlags& f) {
    if (f.config_path.empty())
        throw std::runtime_error("anomaly requires --config with fields A and B");
    Json cfg = load_json(f.config_path);
    if (!cfg.contains("A") || !cfg.contains("B"))
        throw std::runtime_error("anomaly config must contain operator specs A and B");
    Json ja = cfg["A"], jb = cfg["B"];
    if (f.depth > 0) ja["depth"] = jb["depth"] = f.depth;
    Operator a = operator_from_json(ja);
    Operator b = operator_from_json(jb);
    AnomalyOptions opt;
    opt.trace.modes = f.modes;
    if (cfg.contains("psi")) opt.path_cut = cfg["psi"].get<double>();
    bool oracle = cfg.value("oracle", true);
    AnomalyReport rep = zeta_anomaly_local(a, b, oracle, opt);
    Json payload = anomaly_to_json(rep);
    payload["config"] = cfg;
    emit(payload, f);
    return 0;
}

int run_verify(const std::string& suite, const CommonFlags& f) {
    VerifyOptions vo;
    vo.modes = f.modes;
    std::vector<CheckRow> rows = run_suite(suite, vo);

    int passed = 0;
    for (const CheckRow& r : rows) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.check_id << "  |value-ref|="
                  << std::abs(r.value - r.reference) << "  tol=" << r.tolerance << "\n";
        passed += r.pass ? 1 : 0;
    }
    std::cout << "suite " << suite << ": " << passed << "/" << rows.size()
              << " checks passed\n";

    Json echo;
    echo["suite"] = suite;
    echo["modes"] = vo.modes;
    echo["tau_nodes"] = vo.tau_nodes;
    echo["lambda"] = fmt17(vo.Lambda);
    echo["depth"] = kDefaultDepth;
    echo["grid"] = kDefaultGrid;
    std::string dir = f.out.empty() ? "." : f.out;
    {
        std::ofstream jf(dir + "/report.json");
        if (!jf) throw std::runtime_error("cannot write report to: " + dir);
        jf << checks_to_json(rows, echo).dump(2) << "\n";
    }
    {
        std::ofstream cf(dir + "/report.csv");
        cf << checks_to_csv(rows);
    }
    return passed == static_cast<int>(rows.size()) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbol-calculus workbench for operators on the circle"};
    app.require_subcommand(1);

    CommonFlags f;
    std::string suite = "all";

    CLI::App* c_res = app.add_subcommand("residue", "noncommutative residue");
    add_operator_flags(c_res, f);
    CLI::App* c_tr = app.add_subcommand("trace", "canonical or weighted trace");
    add_operator_flags(c_tr, f);
    c_tr->add_option("--weight", f.weight_expr, "weight operator expression");
    CLI::App* c_det = app.add_subcommand("logdet", "zeta or weighted determinant");
    add_operator_flags(c_det, f);
    c_det->add_option("--weight", f.weight_expr, "weight operator expression");
    CLI::App* c_an = app.add_subcommand("anomaly", "multiplicative anomaly report");
    add_operator_flags(c_an, f);
    CLI::App* c_ver = app.add_subcommand("verify", "run a verification suite");
    c_ver->add_option("suite", suite, "residues|traces|determinants|anomaly|all")
        ->check(CLI::IsMember(psido::suite_names()));
    add_operator_flags(c_ver, f);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_res->parsed()) return run_residue(f);
        if (c_tr->parsed()) return run_trace(f);
        if (c_det->parsed()) return run_logdet(f);
        if (c_an->parsed()) return run_anomaly(f);
        if (c_ver->parsed()) return run_verify(suite, f);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
