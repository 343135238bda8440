#include "psido/anomaly.hpp"

#include <cmath>

#include "psido/contour.hpp"

namespace psido {

namespace {

// Scaled Gauss-Legendre nodes/weights on [0,1].
void unit_rule(int n, std::vector<double>& x, std::vector<double>& w) {
    const QuadRule& q = gauss_legendre(n);
    x.resize(q.x.size());
    w.resize(q.x.size());
    for (size_t i = 0; i < q.x.size(); ++i) {
        x[i] = 0.5 * (1.0 + q.x[i]);
        w[i] = 0.5 * q.w[i];
    }
}

double path_cut(const Operator& a, const Operator& b, const AnomalyOptions& opt) {
    if (opt.path_cut) return *opt.path_cut;
    if (a.is_multiplier() && b.is_multiplier()) {
        // The log branch must stay continuous along the whole interpolating
        // family A^tau B, tau in [0,1], so the cut has to avoid the union of
        // their spectra, not just the endpoint product's.
        std::vector<double> args;
        for (int it = 0; it <= 8; ++it) {
            cd tau(it / 8.0);
            for (int n = -64; n <= 64; ++n) {
                Mat m = matrix_power_eig(a.mode(double(n)), tau, a.cut) * b.mode(double(n));
                Eigen::ComplexEigenSolver<Mat> es(m, false);
                for (int i = 0; i < m.rows(); ++i) {
                    cd lam = es.eigenvalues()(i);
                    if (std::abs(lam) >= 1e-10) args.push_back(std::arg(lam));
                }
            }
        }
        return cut_from_args(std::move(args), a.name + "^tau*" + b.name);
    }
    return operator_product_auto(a, b).cut;
}

// d/dt|_{t=0} log_psi(A^t # C) by centered differences with one Richardson
// step; the log rows of the result are the constant a*I.
Symbol dlog_family(const Operator& a, const Symbol& c, double psi, double h) {
    auto f = [&](double t) {
        Symbol at = complex_power_symbol(a.symbol, cd(t), a.cut);
        return log_symbol(star_product(at, c), psi);
    };
    Symbol d1 = (cd(1.0 / (2.0 * h)) * (f(h) - f(-h)));
    Symbol d2 = (cd(1.0 / h) * (f(h / 2) - f(-h / 2)));
    return cd(4.0 / 3.0) * d2 - cd(1.0 / 3.0) * d1;
}

bool operators_commute(const Operator& a, const Operator& b) {
    double scale = 1.0 + a.symbol.max_abs() * b.symbol.max_abs();
    if (commutator_symbol(a.symbol, b.symbol).max_abs() > 1e-10 * scale) return false;
    if (a.is_multiplier() && b.is_multiplier())
        for (double n : {0.0, 1.0, -3.0, 17.0}) {
            Mat ma = a.mode(n), mb = b.mode(n);
            if ((ma * mb - mb * ma).cwiseAbs().maxCoeff() > 1e-10 * scale) return false;
        }
    return true;
}

}  // namespace

Symbol L_symbol(const Operator& a, const Operator& b, double psi) {
    Symbol ab = star_product(a.symbol, b.symbol);
    Symbol l = log_symbol(ab, psi) - log_symbol(a.symbol, a.cut) - log_symbol(b.symbol, b.cut);
    return l.truncated_log_type(0, 1e-7);
}

Symbol K_symbol(const Operator& a, const Operator& b, double psi) {
    Symbol ab = star_product(a.symbol, b.symbol);
    Symbol lab = log_symbol(ab, psi);
    Symbol la = log_symbol(a.symbol, a.cut);
    Symbol lb = log_symbol(b.symbol, b.cut);
    Symbol k = cd(0.5) / (a.order + b.order) * star_product(lab, lab) -
               cd(0.5) / a.order * star_product(la, la) -
               cd(0.5) / b.order * star_product(lb, lb);
    return k.truncated_log_type(1, 1e-7);
}

Symbol W_tau(const Operator& a, const Operator& b, double tau, double psi,
             const AnomalyOptions& opt) {
    Symbol atb = star_product(complex_power_symbol(a.symbol, cd(tau), a.cut), b.symbol);
    Symbol w = dlog_family(a, atb, psi, opt.t_step) - log_symbol(a.symbol, a.cut);
    return w.truncated_log_type(0, 1e-6);
}

TauIntegral trQ_L(const Operator& a, const Operator& b, const Operator& q,
                  double psi, const AnomalyOptions& opt) {
    Symbol logq = log_symbol(q.symbol, q.cut);
    auto integrand = [&](double tau) {
        Symbol atau = complex_power_symbol(a.symbol, cd(tau), a.cut);
        Symbol atb = star_product(atau, b.symbol);
        Symbol logatb = log_symbol(atb, psi);
        Symbol w = (dlog_family(a, atb, psi, opt.t_step) - log_symbol(a.symbol, a.cut))
                       .truncated_log_type(0, 1e-6);
        Symbol factor = (cd(1.0) / (a.order * tau + b.order) * logatb -
                         cd(1.0) / q.order * logq)
                            .truncated_log_type(0, 1e-7);
        return residue(star_product(w, factor));
    };

    TauIntegral out;
    std::vector<double> x, w;
    unit_rule(opt.tau_nodes, x, w);
    std::vector<cd> terms;
    for (size_t i = 0; i < x.size(); ++i) {
        cd g = integrand(x[i]);
        out.nodes.push_back(x[i]);
        out.integrand.push_back(g);
        terms.push_back(w[i] * g);
    }
    out.value = pairwise_sum(terms);
    if (opt.tau_doubling) {
        std::vector<double> x2, w2;
        unit_rule(2 * opt.tau_nodes, x2, w2);
        std::vector<cd> t2;
        for (size_t i = 0; i < x2.size(); ++i) t2.push_back(w2[i] * integrand(x2[i]));
        cd v2 = pairwise_sum(t2);
        out.doubling_gap = std::abs(v2 - out.value);
        out.value = v2;
    }
    return out;
}

cd log_det_zeta_local(const Operator& a, const TraceOptions& opt) {
    TraceOptions topt = opt;
    if (a.is_multiplier()) topt.flavor = TraceFlavor::ModeSum;
    Symbol la = log_symbol(a.symbol, a.cut);
    cd tr = canonical_trace(la, topt).value;
    cd r = residue(star_product(la, la));
    return tr - r / (2.0 * a.order);
}

cd log_det_weighted(const Operator& a, const Operator& q, const TraceOptions& opt) {
    TraceOptions topt = opt;
    if (a.is_multiplier()) topt.flavor = TraceFlavor::ModeSum;
    Symbol la = log_symbol(a.symbol, a.cut);
    return weighted_trace(la, q, topt);
}

cd ducourtioux_gap(const Operator& a, const Operator& q, const TraceOptions& opt) {
    Symbol la = log_symbol(a.symbol, a.cut);
    Symbol lq = log_symbol(q.symbol, q.cut);
    Symbol d = (la - (a.order / q.order) * lq).truncated_log_type(0, 1e-7);
    cd corr = residue(star_product(d, d)) / (2.0 * a.order);
    return log_det_zeta_local(a, opt) - log_det_weighted(a, q, opt) + corr;
}

cd anomaly_commuting_local(const Operator& a, const Operator& b) {
    Symbol la = log_symbol(a.symbol, a.cut);
    Symbol lb = log_symbol(b.symbol, b.cut);
    Symbol d = (cd(1.0) / a.order * la - cd(1.0) / b.order * lb).truncated_log_type(0, 1e-7);
    cd pref = a.order * b.order / (2.0 * (a.order + b.order));
    return pref * residue(star_product(d, d));
}

AnomalyReport zeta_anomaly_local(const Operator& a, const Operator& b,
                                 bool with_oracle, const AnomalyOptions& opt) {
    AnomalyReport rep;
    rep.psi = path_cut(a, b, opt);
    rep.commuting = operators_commute(a, b);

    if (rep.commuting) {
        rep.log_M_local = anomaly_commuting_local(a, b);
        rep.log_M_swapped = rep.log_M_local;
    } else {
        Symbol l = L_symbol(a, b, rep.psi);
        Symbol k = K_symbol(a, b, rep.psi);
        Symbol logb = log_symbol(b.symbol, b.cut);
        Symbol loga = log_symbol(a.symbol, a.cut);

        rep.tau = trQ_L(a, b, b, rep.psi, opt);
        rep.trQL_term = rep.tau.value;
        Symbol sb = (cd(1.0) / b.order * star_product(l, logb) - k).truncated_log_type(0, 1e-7);
        rep.residue_term = residue(sb);
        rep.log_M_local = rep.trQL_term + rep.residue_term;

        TauIntegral ta = trQ_L(a, b, a, rep.psi, opt);
        Symbol sa = (cd(1.0) / a.order * star_product(l, loga) - k).truncated_log_type(0, 1e-7);
        rep.log_M_swapped = ta.value + residue(sa);
    }

    if (with_oracle && a.is_multiplier() && b.is_multiplier()) {
        rep.log_M_spectral = anomaly_spectral(a, b, rep.psi);
        rep.discrepancy = std::abs(rep.log_M_local - *rep.log_M_spectral);
    }
    return rep;
}

}  // namespace psido
