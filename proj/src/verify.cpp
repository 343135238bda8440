#include "psido/verify.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <thread>

namespace psido {
namespace {

CheckRow row(int criterion, std::string id, std::string formula, cd value, cd reference,
             double tolerance) {
    CheckRow r;
    r.criterion = criterion;
    r.check_id = std::move(id);
    r.formula = std::move(formula);
    r.value = value;
    r.reference = reference;
    r.tolerance = tolerance;
    r.pass = std::isfinite(value.real()) && std::isfinite(value.imag()) &&
             std::abs(value - reference) <= tolerance;
    return r;
}

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n') c = ';';
    return s;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return std::string(v < 0 ? "(" : "") + buf + (v < 0 ? ")" : "");
}

// Shared operator corpus.  Scalar positive powers of 1-lap and 2-lap, a
// shifted Dirac-type first-order operator, positive 2x2 multipliers, order -2
// perturbations, and five pairwise noncommuting first-order 2x2 multipliers.
struct Corpus {
    Operator q1 = make_power_multiplier("sqrt_one_minus_lap", "1+n^2", 0.5);
    Operator q2 = make_power_multiplier("two_minus_lap", "2+n^2", 1.0);
    Operator a1 = make_power_multiplier("one_minus_lap", "1+n^2", 1.0);
    Operator a_quarter = make_power_multiplier("quarter_power", "1+n^2", 0.25);
    Operator a_mquarter = make_power_multiplier("inv_quarter_power", "1+n^2", -0.25);
    Operator a_msqrt = make_power_multiplier("inv_sqrt", "1+n^2", -0.5);
    Operator d03 = make_shifted_first_order("d_plus_03", cd(0.3, 0.0));
    Operator m2 = make_matrix_multiplier(
        "pos_2x2", {{"sqrt(1+n^2)+0.2", "0.1"}, {"0.1", "sqrt(1+n^2)"}});
    Operator q1_2x2 = make_matrix_multiplier(
        "sqrt_one_minus_lap_2x2", {{"sqrt(1+n^2)", "0"}, {"0", "sqrt(1+n^2)"}});
    Operator q2_2x2 =
        make_matrix_multiplier("two_minus_lap_2x2", {{"2+n^2", "0"}, {"0", "2+n^2"}});
    Operator s2 = make_power_multiplier("smoothing_scalar", "1+n^2", -1.0);
    Operator s2_2x2 = make_matrix_multiplier(
        "smoothing_2x2",
        {{"(1+n^2)^(-1)", "0.5*(1+n^2)^(-1)"}, {"0", "(1+n^2)^(-1)"}});
    // Decaying non-integer order keeps the Lambda-stability check inside
    // double-precision headroom (positive orders lose ~Lambda^{a+1} * eps to
    // cancellation between the interior integral and the finite-part tail).
    Operator vx =
        make_variable_symbol("variable_x_dependent", {{"(2+sin(x))*(1+xi^2)^(-0.65)"}});
    std::vector<Operator> nc;

    Corpus() {
        const double p[5] = {0.2, -0.1, 0.15, 0.05, -0.15};
        const double q[5] = {0.1, 0.15, -0.05, 0.2, 0.08};
        const double r[5] = {0.05, 0.2, 0.1, -0.1, 0.12};
        for (int i = 0; i < 5; ++i)
            nc.push_back(make_matrix_multiplier(
                "nc_" + std::to_string(i + 1),
                {{"sqrt(1+n^2)+" + num(p[i]), num(q[i])},
                 {num(r[i]), "sqrt(1+n^2)-" + num(p[i])}}));
    }
};

struct Setup {
    const Corpus& c;
    TraceOptions tm;        // mode-sum finite part
    TraceOptions tc;        // cut-off-integral finite part
    SpectralOptions so;
    AnomalyOptions ao;
};

std::vector<CheckRow> crit1(const Setup& s) {
    std::vector<CheckRow> out;
    out.push_back(row(1, "res_inv_sqrt", "res((1-lap)^(-1/2)) = 2",
                      residue(s.c.a_msqrt.symbol), cd(2.0), 1e-8));
    out.push_back(row(1, "res_vs_zeta_pole", "Res_{s=1} zeta_Q1(s) = res(Q1^(-1))",
                      zeta_pole_residue(s.c.q1, cd(1.0), s.so),
                      residue(complex_power_symbol(s.c.q1.symbol, cd(-1.0), s.c.q1.cut)),
                      1e-6));
    DirectFit fit = weighted_trace_direct(s.c.a_msqrt.symbol, s.c.q1, s.tm);
    out.push_back(row(1, "direct_fit_pole", "c_{-1} of TR(A Q^{-z}) = res(A)/q",
                      fit.coeffs.at(0), cd(2.0), 1e-5));
    return out;
}

std::vector<CheckRow> crit2(const Setup& s) {
    std::vector<CheckRow> out;
    const Operator* ops[3] = {&s.c.q1, &s.c.q2, &s.c.m2};
    for (const Operator* q : ops) {
        cd lhs = residue(log_symbol(q->symbol, q->cut)) + q->order * zeta_at_zero(*q, s.so);
        out.push_back(row(2, "res_log_" + q->name, "res(log Q) + q zeta_Q(0) = 0", lhs,
                          cd(0.0), 1e-6));
    }
    return out;
}

std::vector<CheckRow> crit3(const Setup& s) {
    std::vector<CheckRow> out;
    const double target = 4.0 * std::sinh(PI) * std::sinh(PI);
    cd dspec = det_zeta_spectral(s.c.a1, s.so);
    out.push_back(row(3, "det_spectral_1mlap", "det_zeta(1-lap) = 4 sinh^2(pi) spectral",
                      dspec, cd(target), 1e-6 * target));
    cd dloc = std::exp(log_det_zeta_local(s.c.a1, s.tm));
    out.push_back(row(3, "det_local_1mlap", "det_zeta(1-lap) = 4 sinh^2(pi) local", dloc,
                      cd(target), 1e-4 * target));
    return out;
}

std::vector<CheckRow> crit4(const Setup& s) {
    std::vector<CheckRow> out;
    const Operator* ops[10] = {&s.c.q1,       &s.c.q2,     &s.c.a1,    &s.c.a_quarter,
                               &s.c.a_mquarter, &s.c.a_msqrt, &s.c.d03, &s.c.m2,
                               &s.c.nc[0],    &s.c.nc[1]};
    for (const Operator* a : ops) {
        const Operator& q = a->dim == 1 ? s.c.q1 : s.c.q1_2x2;
        cd defect = weighted_trace(a->symbol, q, s.tm);
        cd direct = weighted_trace_direct(a->symbol, q, s.tm).value;
        out.push_back(row(4, "defect_vs_direct_" + a->name,
                          "tr^Q(A) defect formula = direct Laurent fit", defect, direct,
                          1e-5));
    }
    const Operator* spec_ops[3] = {&s.c.q2, &s.c.m2, &s.c.d03};
    for (const Operator* a : spec_ops) {
        const Operator& q = a->dim == 1 ? s.c.q1 : s.c.q1_2x2;
        out.push_back(row(4, "defect_vs_spectral_" + a->name,
                          "tr^Q(A) defect formula = spectral mode fit",
                          weighted_trace(a->symbol, q, s.tm),
                          weighted_trace_spectral(*a, q, s.so), 1e-5));
    }
    return out;
}

std::vector<CheckRow> crit5(const Setup& s) {
    std::vector<CheckRow> out;
    CommutatorCheck cc =
        weighted_trace_commutator(s.c.nc[0].symbol, s.c.nc[1].symbol, s.c.q1_2x2, s.tm);
    out.push_back(row(5, "coboundary_swap", "res(A[B;logQ])/q = -res(B[A;logQ])/q",
                      cc.value, cc.swapped, 1e-7));
    out.push_back(row(5, "coboundary_trace", "res(A[B;logQ])/q = tr^Q([A;B])", cc.value,
                      cc.as_trace, 1e-7));
    CommutatorCheck ca =
        weighted_trace_commutator(s.c.nc[0].symbol, s.c.nc[1].symbol, s.c.nc[0], s.tm);
    out.push_back(
        row(5, "coboundary_weight_A", "tr^A([A;B]) = 0", ca.value, cd(0.0), 1e-9));
    return out;
}

std::vector<CheckRow> crit6(const Setup& s) {
    std::vector<CheckRow> out;
    const Operator* pairs[3][2] = {
        {&s.c.q1, &s.c.q2}, {&s.c.q1, &s.c.a1}, {&s.c.q2, &s.c.a1}};
    const Symbol& a = s.c.a_quarter.symbol;
    for (auto& pr : pairs) {
        const Operator& qa = *pr[0];
        const Operator& qb = *pr[1];
        cd lhs = weighted_trace(a, qa, s.tm) - weighted_trace(a, qb, s.tm);
        Symbol diff = cd(1.0) / qb.order * log_symbol(qb.symbol, qb.cut) -
                      cd(1.0) / qa.order * log_symbol(qa.symbol, qa.cut);
        cd rhs = residue(star_product(a, diff));
        out.push_back(row(6, "weight_change_" + qa.name + "_" + qb.name,
                          "tr^Q1(A)-tr^Q2(A) = res(A(logQ2/q2 - logQ1/q1))", lhs, rhs,
                          1e-7));
    }
    return out;
}

std::vector<CheckRow> crit7(const Setup& s) {
    std::vector<CheckRow> out;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            double psi = operator_product_auto(s.c.nc[i], s.c.nc[j]).cut;
            cd r = residue(L_symbol(s.c.nc[i], s.c.nc[j], psi));
            out.push_back(row(7,
                              "res_L_nc_" + std::to_string(i + 1) + std::to_string(j + 1),
                              "res(L(A;B)) = 0 noncommuting", r, cd(0.0), 1e-7));
        }
    const Operator* pairs[5][2] = {{&s.c.a1, &s.c.q1},
                                   {&s.c.q1, &s.c.a_quarter},
                                   {&s.c.q2, &s.c.a_msqrt},
                                   {&s.c.a_quarter, &s.c.a_msqrt},
                                   {&s.c.m2, &s.c.m2}};
    for (auto& pr : pairs) {
        double psi = operator_product_auto(*pr[0], *pr[1]).cut;
        double m = L_symbol(*pr[0], *pr[1], psi).max_abs();
        out.push_back(row(7, "L_zero_" + pr[0]->name + "_" + pr[1]->name,
                          "L(A;B) componentwise zero commuting", cd(m), cd(0.0), 1e-8));
    }
    return out;
}

std::vector<CheckRow> crit8(const Setup& s) {
    std::vector<CheckRow> out;
    const Operator& a = s.c.nc[0];
    const Operator& b = s.c.nc[1];
    double psi = operator_product_auto(a, b).cut;
    Symbol l = L_symbol(a, b, psi);
    const Operator* weights[2] = {&b, &s.c.q1_2x2};
    for (const Operator* q : weights) {
        TauIntegral ti = trQ_L(a, b, *q, psi, s.ao);
        cd ref = weighted_trace(l, *q, s.tm);
        out.push_back(row(8, "tau_formula_Q_" + q->name,
                          "tau integral of res(W(...)) = tr^Q(L(A;B))", ti.value, ref,
                          1e-5));
    }
    return out;
}

std::vector<CheckRow> crit9(const Setup& s) {
    const Operator& b = s.c.nc[1];
    const Operator& q = s.c.m2;
    double psi = operator_product_auto(s.c.nc[0], b).cut;
    const double h = s.ao.t_step;
    auto f = [&](double t) {
        Operator at = perturb_family(s.c.nc[0], s.c.s2_2x2, t);
        return weighted_trace(L_symbol(at, b, psi), q, s.tm);
    };
    cd deriv = (f(h) - f(-h)) / (2.0 * h);
    return {row(9, "trQ_L_family_derivative",
                "d/dt tr^Q(L(A(1+tS);B)) = 0 at t=0; ord S = -2", deriv, cd(0.0), 1e-5)};
}

std::vector<CheckRow> crit10(const Setup& s) {
    std::vector<CheckRow> out;
    AnomalyReport rep = zeta_anomaly_local(s.c.d03, s.c.q1, true, s.ao);
    cd closed = anomaly_commuting_local(s.c.d03, s.c.q1);
    out.push_back(row(10, "commuting_vs_spectral",
                      "log M closed form = spectral anomaly; (D+0.3; Q1)",
                      rep.log_M_local, rep.log_M_spectral.value_or(cd(0.0)), 1e-4));
    out.push_back(row(10, "commuting_closed_form",
                      "log M = (ab/2(a+b)) res((logA/a - logB/b)^2)", rep.log_M_local,
                      closed, 1e-12));
    return out;
}

std::vector<CheckRow> crit11(const Setup& s) {
    std::vector<CheckRow> out;
    const Operator* pairs[3][2] = {{&s.c.nc[0], &s.c.nc[1]},
                                   {&s.c.nc[2], &s.c.nc[3]},
                                   {&s.c.nc[0], &s.c.nc[4]}};
    for (auto& pr : pairs) {
        AnomalyReport rep = zeta_anomaly_local(*pr[0], *pr[1], true, s.ao);
        std::string tag = pr[0]->name + "_" + pr[1]->name;
        out.push_back(row(11, "anomaly_vs_spectral_" + tag,
                          "assembled log M = spectral anomaly", rep.log_M_local,
                          rep.log_M_spectral.value_or(cd(0.0)), 1e-3));
        out.push_back(row(11, "anomaly_weight_swap_" + tag,
                          "B-weighted assembly = A-weighted assembly", rep.log_M_local,
                          rep.log_M_swapped, 1e-6));
    }
    return out;
}

std::vector<CheckRow> crit12(const Setup& s) {
    std::vector<CheckRow> out;
    const Operator* pairs[3][2] = {
        {&s.c.q1, &s.c.a1}, {&s.c.a_quarter, &s.c.a1}, {&s.c.m2, &s.c.q2_2x2}};
    for (auto& pr : pairs)
        out.push_back(row(12, "ducourtioux_" + pr[0]->name + "_" + pr[1]->name,
                          "logdet_zeta(A) - logdet^Q(A) + res((logA-(a/q)logQ)^2)/2a = 0",
                          ducourtioux_gap(*pr[0], *pr[1], s.tm), cd(0.0), 1e-5));
    return out;
}

std::vector<CheckRow> crit13(const Setup& s) {
    std::vector<CheckRow> out;
    Operator q1c = make_power_multiplier("sqrt_one_minus_lap_cut34", "1+n^2", 0.5,
                                         3.0 * PI / 4.0);
    cd d1 = det_zeta_spectral(s.c.q1, s.so);
    cd d2 = det_zeta_spectral(q1c, s.so);
    out.push_back(row(13, "cut_stability_spectral",
                      "det_zeta spectral invariant under cut pi -> 3pi/4", d1, d2,
                      1e-9 * std::max(1.0, std::abs(d2))));
    out.push_back(row(13, "cut_stability_local",
                      "logdet_zeta local invariant under cut pi -> 3pi/4",
                      log_det_zeta_local(s.c.q1, s.tm), log_det_zeta_local(q1c, s.tm),
                      1e-9));
    out.push_back(row(13, "cut_stability_weighted",
                      "logdet^Q invariant under weight-cut pi -> 3pi/4",
                      log_det_weighted(s.c.a_quarter, s.c.q1, s.tm),
                      log_det_weighted(s.c.a_quarter, q1c, s.tm), 1e-9));
    return out;
}

std::vector<CheckRow> crit14(const Setup& s) {
    std::vector<CheckRow> out;
    const double h = 1e-3;
    {  // residue along the family (1-lap)^{1/2} (1 + t S), ord S = -2
        auto f = [&](double t) {
            return residue(perturb_family(s.c.q1, s.c.s2, t).symbol);
        };
        cd ref = residue(star_product(s.c.q1.symbol, s.c.s2.symbol));
        out.push_back(row(14, "family_res", "d/dt res(A_t) = res(A S)",
                          (f(h) - f(-h)) / (2.0 * h), ref, 1e-5));
    }
    {  // canonical trace along a non-integer-order family
        auto f = [&](double t) {
            return canonical_trace(perturb_family(s.c.a_quarter, s.c.s2, t).symbol, s.tm)
                .value;
        };
        cd ref =
            canonical_trace(star_product(s.c.a_quarter.symbol, s.c.s2.symbol), s.tm).value;
        out.push_back(row(14, "family_TR", "d/dt TR(A_t) = TR(A S)",
                          (f(h) - f(-h)) / (2.0 * h), ref, 1e-5));
    }
    {  // weighted trace along the family
        auto f = [&](double t) {
            return weighted_trace(perturb_family(s.c.q1, s.c.s2, t).symbol, s.c.q2, s.tm);
        };
        cd ref = weighted_trace(star_product(s.c.q1.symbol, s.c.s2.symbol), s.c.q2, s.tm);
        out.push_back(row(14, "family_trQ", "d/dt tr^Q(A_t) = tr^Q(A S)",
                          (f(h) - f(-h)) / (2.0 * h), ref, 1e-5));
    }
    return out;
}

std::vector<CheckRow> crit15(const Setup& s) {
    std::vector<CheckRow> out;
    TraceOptions big = s.tc;
    big.Lambda = 2.0 * s.tc.Lambda;
    TraceOptions alt = s.tc;
    alt.chi = chi_alt;

    const Operator* ops[2] = {&s.c.a_mquarter, &s.c.vx};
    for (const Operator* a : ops) {
        cd base = canonical_trace(a->symbol, s.tc).value;
        out.push_back(row(15, "lambda_doubling_" + a->name,
                          "TR cut-off value stable under Lambda -> 2 Lambda", base,
                          canonical_trace(a->symbol, big).value, 1e-7));
        out.push_back(row(15, "chi_alternate_" + a->name,
                          "TR cut-off value stable under alternate excision chi", base,
                          canonical_trace(a->symbol, alt).value, 1e-7));
    }
    TraceOptions m2x = s.tm;
    m2x.modes = 2 * s.tm.modes;
    out.push_back(row(15, "mode_doubling_TR",
                      "mode-sum finite part stable under M -> 2M",
                      canonical_trace(s.c.a_mquarter.symbol, s.tm).value,
                      canonical_trace(s.c.a_mquarter.symbol, m2x).value, 1e-7));
    out.push_back(row(15, "lambda_doubling_trQ",
                      "tr^Q stable under Lambda -> 2 Lambda",
                      weighted_trace(s.c.a_quarter.symbol, s.c.q1, s.tc),
                      weighted_trace(s.c.a_quarter.symbol, s.c.q1, big), 1e-7));
    return out;
}

using CritFn = std::vector<CheckRow> (*)(const Setup&);

const std::map<int, CritFn>& criterion_table() {
    static const std::map<int, CritFn> table = {
        {1, crit1},  {2, crit2},  {3, crit3},  {4, crit4},  {5, crit5},
        {6, crit6},  {7, crit7},  {8, crit8},  {9, crit9},  {10, crit10},
        {11, crit11}, {12, crit12}, {13, crit13}, {14, crit14}, {15, crit15}};
    return table;
}

const std::map<std::string, std::vector<int>>& suite_table() {
    static const std::map<std::string, std::vector<int>> table = {
        {"residues", {1, 2, 7}},
        {"traces", {4, 5, 6, 9, 14, 15}},
        {"determinants", {3, 12, 13}},
        {"anomaly", {8, 10, 11}},
        {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15}}};
    return table;
}

int resolve_threads(const VerifyOptions& opt) {
    if (opt.threads > 0) return opt.threads;
    if (const char* env = std::getenv("PSIDO_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"residues", "traces", "determinants",
                                                   "anomaly", "all"};
    return names;
}

std::vector<CheckRow> run_suite(const std::string& suite, const VerifyOptions& opt) {
    auto it = suite_table().find(suite);
    if (it == suite_table().end())
        throw std::invalid_argument("unknown suite: " + suite);
    const std::vector<int>& criteria = it->second;

    Corpus corpus;
    Setup s{corpus, {}, {}, {}, {}};
    s.tm.flavor = TraceFlavor::ModeSum;
    s.tm.modes = opt.modes;
    s.tm.Lambda = opt.Lambda;
    s.tc.flavor = TraceFlavor::CutoffIntegral;
    s.tc.Lambda = opt.Lambda;
    s.so.modes = opt.modes;
    s.ao.tau_nodes = opt.tau_nodes;
    s.ao.trace = s.tm;

    std::vector<std::vector<CheckRow>> slots(criteria.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t i = next.fetch_add(1); i < criteria.size(); i = next.fetch_add(1)) {
            int crit = criteria[i];
            try {
                slots[i] = criterion_table().at(crit)(s);
            } catch (const std::exception& e) {
                slots[i] = {row(crit, "criterion_" + std::to_string(crit) + "_error",
                                sanitize(e.what()),
                                cd(std::numeric_limits<double>::quiet_NaN()), cd(0.0),
                                0.0)};
            }
        }
    };
    int threads = std::min<int>(resolve_threads(opt), static_cast<int>(criteria.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<CheckRow> rows;
    for (auto& slot : slots) rows.insert(rows.end(), slot.begin(), slot.end());
    return rows;
}

}  // namespace psido
