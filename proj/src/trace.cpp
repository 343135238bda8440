#include "psido/trace.hpp"

#include <cmath>

namespace psido {

cld mode_tail_fp_wide(cd d, int l, int M, bool* obstruction);

namespace {

cd mat_trace(const Mat& m) { return m.trace(); }

// Panels 0..1, 1..2, 2..4, ... covering [0, L] (last one clipped).
std::vector<std::pair<double, double>> geometric_panels(double L) {
    std::vector<std::pair<double, double>> p;
    double a = 0, b = 1;
    while (a < L) {
        p.emplace_back(a, std::min(b, L));
        a = b;
        b *= 2;
    }
    return p;
}

// int_{-L}^{L} f, f smooth with power-law decay.
cd line_integral(const std::function<cd(double)>& f, double L) {
    std::vector<cd> parts;
    const QuadRule& q = gauss_legendre(32);
    for (auto [a, b] : geometric_panels(L)) {
        cd acc = 0;
        for (size_t i = 0; i < q.x.size(); ++i) {
            double t = 0.5 * (a + b) + 0.5 * (b - a) * q.x[i];
            acc += q.w[i] * (f(t) + f(-t));
        }
        parts.push_back(0.5 * (b - a) * acc);
    }
    return pairwise_sum(parts);
}

double first_neglected_scale(const Symbol& s) {
    double m = 0;
    for (int l = 0; l <= s.log_type(); ++l)
        m = std::max(m, s.comp(s.depth() - 1, l).max_abs());
    return m * s.dim();
}

TraceResult cutoff_trace(const Symbol& s, const TraceOptions& opt) {
    const double L = opt.Lambda;
    const int g = s.grid();
    std::function<double(double)> chi = opt.chi ? opt.chi : chi_default;
    const double scale = 1e-10 * (1.0 + s.max_abs());

    TraceResult res;
    res.density.x_grid.resize(g);
    res.density.values.resize(g);
    for (int k = 0; k < g; ++k) {
        double xk = 2.0 * PI * k / g;
        res.density.x_grid[k] = xk;
        std::function<cd(double)> f;
        if (s.has_exact())
            f = [&](double xi) { return mat_trace(s.exact(xk, xi)); };
        else
            f = [&](double xi) { return mat_trace(s.homog_eval(xk, xi, chi)); };
        cd val = line_integral(f, L);
        std::vector<cd> tails;
        for (int j = 0; j < s.depth(); ++j)
            for (int l = 0; l <= s.log_type(); ++l) {
                const Component& c = s.comp(j, l);
                if (c.empty()) continue;
                cd t = mat_trace(c.plus.at(k)) + mat_trace(c.minus.at(k));
                if (std::abs(t) < 1e-15) continue;
                cd d = s.degree_of(j);
                if (l == 0 && std::abs(d + 1.0) < 1e-9 && std::abs(t) > scale)
                    res.obstruction = true;
                tails.push_back(t * powlog_tail_fp(d, l, L));
            }
        res.density.values[k] = (val + pairwise_sum(tails)) / (2.0 * PI);
    }
    res.density.integral = 2.0 * PI * pairwise_sum(res.density.values) / double(g);
    double dn = std::real(s.order()) - s.depth();
    res.density.error_estimate =
        first_neglected_scale(s) * std::pow(L, dn + 1.0) / std::max(1.0, std::abs(dn + 1.0));
    if (!s.has_exact())  // truncation-only evaluation: no remainder control
        res.density.error_estimate = std::max(res.density.error_estimate, 1e-7);
    res.value = res.density.integral;
    res.error_estimate = res.density.error_estimate * 2.0 * PI;
    return res;
}

TraceResult mode_trace(const Symbol& s, const TraceOptions& opt) {
    if (!s.has_exact() || !s.is_multiplier())
        throw SymbolError("mode-sum trace needs an exact Fourier-multiplier symbol");
    const int M = opt.modes;
    const double scale = 1e-10 * (1.0 + s.max_abs());

    // The finite part cancels sums of magnitude ~M^{a+1}; accumulate both the
    // direct modes and the continued tails in extended precision.
    std::vector<cld> parts;
    for (int n = -M; n <= M; ++n) parts.push_back(cld(mat_trace(s.exact(0.0, double(n)))));

    TraceResult res;
    for (int j = 0; j < s.depth(); ++j)
        for (int l = 0; l <= s.log_type(); ++l) {
            const Component& c = s.comp(j, l);
            if (c.empty()) continue;
            cd t = mat_trace(c.plus.at(0)) + mat_trace(c.minus.at(0));
            if (std::abs(t) < 1e-15) continue;
            bool obs = false;
            cld term = mode_tail_fp_wide(s.degree_of(j), l, M, &obs);
            if (obs && std::abs(t) > scale) res.obstruction = true;
            parts.push_back(cld(t) * term);
        }
    res.value = pairwise_sum(parts);
    double dn = std::real(s.order()) - s.depth();
    res.error_estimate = first_neglected_scale(s) * std::pow(double(M), dn + 1.0) /
                         std::max(1.0, std::abs(dn + 1.0));
    res.density.x_grid = {0.0};
    res.density.values = {res.value / (2.0 * PI)};
    res.density.integral = res.value;
    res.density.error_estimate = res.error_estimate;
    return res;
}

// Depth needed for a product of these orders to reach degree -1.
int residue_depth(cd order) {
    return std::max(2, static_cast<int>(std::ceil(std::real(order))) + 2);
}

}  // namespace

DensityReport residue_density(const Symbol& s) {
    DensityReport r;
    int g = s.grid();
    r.x_grid.resize(g);
    r.values.assign(g, cd(0));
    for (int k = 0; k < g; ++k) r.x_grid[k] = 2.0 * PI * k / g;
    auto j = s.index_of_degree(cd(-1.0));
    if (j) {
        const Component& c = s.comp(*j, 0);
        if (!c.empty())
            for (int k = 0; k < g; ++k)
                r.values[k] = (mat_trace(c.plus.at(k)) + mat_trace(c.minus.at(k))) / (2.0 * PI);
    }
    r.integral = 2.0 * PI * pairwise_sum(r.values) / double(g);
    return r;
}

cd residue(const Symbol& s) { return residue_density(s).integral; }

TraceResult canonical_trace(const Symbol& s, const TraceOptions& opt) {
    return opt.flavor == TraceFlavor::ModeSum ? mode_trace(s, opt) : cutoff_trace(s, opt);
}

cld mode_tail_fp_wide(cd d, int l, int M, bool* obstruction) {
    cld s = cld(-d.real(), -d.imag());
    long double q = (long double)M + 1.0L;
    bool at_pole = std::abs(d + 1.0) < 1e-9;
    if (obstruction) *obstruction = (l == 0) && at_pole;
    if (l == 0) {
        if (at_pole) return cld(hurwitz_fp1(double(q)));
        return hurwitz_zeta_wide(s, q);
    }
    if (l == 1) {
        if (!at_pole) return -hurwitz_zeta_ds_wide(s, q);
        // Laurent constant of -d/ds zeta_H(s,q) at s = 1 (pole 1/(s-1)^2).
        auto g = [&](long double h) {
            cld a = -hurwitz_zeta_ds_wide(cld(1.0L + h), q) - 1.0L / (h * h);
            cld b = -hurwitz_zeta_ds_wide(cld(1.0L - h), q) - 1.0L / (h * h);
            return 0.5L * (a + b);
        };
        long double h = 1e-2L;
        return (4.0L * g(h / 2) - g(h)) / 3.0L;
    }
    throw SymbolError("mode-sum finite part supports log powers <= 1");
}

cd mode_tail_fp(cd d, int l, int M, bool* obstruction) {
    cld r = mode_tail_fp_wide(d, l, M, obstruction);
    return cd(double(r.real()), double(r.imag()));
}

cd weighted_trace(const Symbol& a, const Operator& Q, const TraceOptions& opt) {
    Symbol logq = log_symbol(Q.symbol, Q.cut);
    Symbol alq = star_product(a, logq);
    TraceResult t = canonical_trace(a, opt);
    return t.value - residue(alq) / Q.order;
}

DirectFit weighted_trace_direct(const Symbol& a, const Operator& Q,
                                const TraceOptions& opt, int max_pole) {
    double h = opt.direct_h / std::abs(Q.order);
    // The finite part is independent of the mode cap; a moderate cap keeps
    // the Hurwitz tails (~M^{a+1}) from amplifying the ~1e-15 quadrature
    // noise of the contour-built power-symbol coefficients.
    TraceOptions sample_opt = opt;
    sample_opt.modes = std::min(opt.modes, 512);
    std::vector<cd> zs, fs;
    for (int k : {-4, -3, -2, -1, 1, 2, 3, 4}) {
        cd z = cd(k * h);
        Symbol qz = complex_power_symbol(Q.symbol, -z, Q.cut);
        Symbol az = star_product(a, qz);
        fs.push_back(canonical_trace(az, sample_opt).value);
        zs.push_back(z);
    }
    DirectFit fit;
    fit.max_pole = max_pole;
    fit.coeffs = laurent_fit(zs, fs, -max_pole, 4);
    fit.value = fit.coeffs[max_pole];  // c_0
    for (size_t i = 0; i < zs.size(); ++i) {
        cd model = 0;
        for (int k = -max_pole; k <= 4; ++k)
            model += fit.coeffs[k + max_pole] * std::pow(zs[i], k);
        fit.residual = std::max(fit.residual, std::abs(fs[i] - model));
    }
    return fit;
}

CommutatorCheck weighted_trace_commutator(const Symbol& a, const Symbol& b,
                                          const Operator& Q, const TraceOptions& opt) {
    int N = residue_depth(a.order() + b.order());
    N = std::min({N + 2, a.depth(), b.depth()});
    Symbol logq = log_symbol(Q.symbol, Q.cut);
    Symbol blq = star_product(b, logq) - star_product(logq, b);
    Symbol alq = star_product(a, logq) - star_product(logq, a);
    CommutatorCheck out;
    out.value = residue(star_product(a, blq, N)) / Q.order;
    out.swapped = -residue(star_product(b, alq, N)) / Q.order;
    out.as_trace = weighted_trace(commutator_symbol(a, b), Q, opt);
    return out;
}

}  // namespace psido
