#include "psido/holo_calc.hpp"

#include <cmath>

namespace psido {

namespace {

struct ResolventPrep {
    const Symbol* a;
    int depth;
    std::vector<CompTable> dxi;  // d_xi^al of a's table (lambda-free)

    ResolventPrep(const Symbol& sym, int N) : a(&sym), depth(N) {
        if (sym.log_type() != 0)
            throw SymbolError("resolvent expansion: classical symbols only");
        dxi.resize(N);
        dxi[0].resize(sym.depth());
        for (int j = 0; j < sym.depth(); ++j) dxi[0][j] = {sym.comp(j)};
        for (int al = 1; al < N; ++al)
            dxi[al] = table_deriv_xi(dxi[al - 1], sym.order() - cd(double(al - 1)));
    }
};

std::vector<Component> resolvent_run(const ResolventPrep& prep, cd lambda) {
    const Symbol& a = *prep.a;
    int N = prep.depth;
    int g = a.grid(), m = a.dim();
    std::vector<Component> b(N);

    Component b0 = Component::zero(g, m);
    for (int x = 0; x < g; ++x) {
        b0.plus.at(x) = (a.comp(0).plus.at(x) - lambda * Mat::Identity(m, m)).inverse();
        b0.minus.at(x) = (a.comp(0).minus.at(x) - lambda * Mat::Identity(m, m)).inverse();
    }
    b[0] = b0;

    const bool flat = (g == 1);  // x-independent: only al = 0 terms survive
    // x-derivative stacks of b, filled progressively.
    std::vector<std::vector<Component>> b_dx(flat ? 1 : N, std::vector<Component>(N));
    auto push = [&](int l) {
        b_dx[0][l] = b[l];
        if (flat) return;
        for (int al = 1; al < N; ++al)
            b_dx[al][l] = Component(b_dx[al - 1][l].plus.derivative(),
                                    b_dx[al - 1][l].minus.derivative());
    };
    push(0);

    for (int j = 1; j < N; ++j) {
        PMF tp = PMF::zero(g, m);
        PMF tm = PMF::zero(g, m);
        cd coef = 1.0;
        int almax = flat ? 0 : j;
        for (int al = 0; al <= almax; ++al) {
            if (al > 0) coef *= cd(0, -1) / cd(double(al));
            for (int k = 0; k + al <= j; ++k) {
                int l = j - k - al;
                if (l >= j) continue;  // (k,al) = (0,0) belongs to the left side
                if (k >= a.depth()) continue;
                // lambda only enters through b; the al=0,k=0 term is excluded
                // and d_xi^al of the leading entry loses lambda for al >= 1.
                PMF p = PMF::matmul(prep.dxi[al][k][0].plus, b_dx[al][l].plus);
                p *= coef;
                PMF q = PMF::matmul(prep.dxi[al][k][0].minus, b_dx[al][l].minus);
                q *= coef;
                tp += p;
                tm += q;
            }
        }
        PMF jp = PMF::matmul(b0.plus, tp);
        jp *= cd(-1);
        PMF jm = PMF::matmul(b0.minus, tm);
        jm *= cd(-1);
        b[j] = Component(std::move(jp), std::move(jm));
        push(j);
    }
    return b;
}

RadialBounds leading_bounds(const Symbol& a) {
    RadialBounds b;
    bool first = true;
    for (int x = 0; x < a.grid(); ++x) {
        RadialBounds bp = radial_bounds(a.comp(0).plus.at(x));
        RadialBounds bm = radial_bounds(a.comp(0).minus.at(x));
        b = first ? merge(bp, bm) : merge(b, merge(bp, bm));
        first = false;
    }
    if (b.rmin <= 0) throw SymbolError("leading symbol is singular");
    return b;
}

// Accumulate sum over a contour of  factor(lambda) * b_j(lambda)  with node
// doubling; factor already carries the sign and 1/(2*pi*i) in the weights.
std::vector<Component> contour_accumulate(
    const Symbol& a, int N, double tol,
    const std::function<Contour(int)>& make_contour,
    const std::function<cd(const ContourNode&)>& factor) {
    ResolventPrep prep(a, N);
    int g = a.grid(), m = a.dim();
    std::vector<Component> prev;
    for (int scale = 1; scale <= 32; scale *= 2) {
        Contour c = make_contour(scale);
        std::vector<Component> acc(N, Component::zero(g, m));
        for (const auto& node : c.nodes) {
            std::vector<Component> b = resolvent_run(prep, node.lam);
            cd f = node.w * factor(node);
            for (int j = 0; j < N; ++j) {
                b[j].plus *= f;
                b[j].minus *= f;
                acc[j].plus += b[j].plus;
                acc[j].minus += b[j].minus;
            }
        }
        if (!prev.empty()) {
            double diff = 0, norm = 1.0;
            for (int j = 0; j < N; ++j) {
                Component d(acc[j].plus - prev[j].plus, acc[j].minus - prev[j].minus);
                diff = std::max(diff, d.max_abs());
                norm = std::max(norm, acc[j].max_abs());
            }
            if (diff <= tol * norm) return acc;
        }
        prev = std::move(acc);
    }
    return prev;
}

}  // namespace

std::vector<Component> resolvent_symbols(const Symbol& a, cd lambda, int depth) {
    int N = depth > 0 ? depth : a.depth();
    ResolventPrep prep(a, N);
    return resolvent_run(prep, lambda);
}

Symbol complex_power_symbol(const Symbol& a, cd z, double theta, const HoloOptions& opt) {
    if (a.log_type() != 0) throw SymbolError("complex_power_symbol: classical symbols only");
    int N = opt.depth > 0 ? opt.depth : a.depth();
    int g = a.grid(), m = a.dim();
    if (z == cd(0)) return Symbol::identity(g, m, N);

    RadialBounds rb = leading_bounds(a);
    double r = rb.rmin / 3.0, R = 3.0 * rb.rmax;
    auto comps = contour_accumulate(
        a, N, opt.tol,
        [&](int scale) { return build_sector_contour(r, R, theta, scale); },
        [&](const ContourNode& n) {
            // sigma_j(A^z) = -(1/2*pi*i) oint lambda_theta^z b_j d lambda
            return -std::exp(z * cd(std::log(std::abs(n.lam)), n.t)) * cd(1.0);
        });

    Symbol out(z * a.order(), 0, N, g, m);
    for (int j = 0; j < N; ++j) out.comp(j) = comps[j];
    if (a.has_exact() && a.is_multiplier()) {
        const Symbol base = a;  // copy for capture
        out.set_exact(
            [base, z, theta](double x, double xi) {
                return matrix_power_contour(base.exact(x, xi), z, theta);
            },
            true);
    }
    return out;
}

Symbol log_symbol(const Symbol& a, double theta, const HoloOptions& opt) {
    if (a.log_type() != 0) throw SymbolError("log_symbol: classical symbols only");
    int N = opt.depth > 0 ? opt.depth : a.depth();
    int g = a.grid(), m = a.dim();

    RadialBounds rb = leading_bounds(a);
    double r = rb.rmin / 3.0, R = 3.0 * rb.rmax;
    auto comps = contour_accumulate(
        a, N, opt.tol,
        [&](int scale) { return build_sector_contour(r, R, theta, scale); },
        [&](const ContourNode& n) { return -cd(std::log(std::abs(n.lam)), n.t); });

    Symbol out(cd(0), 1, N, g, m);
    // log_theta A ~ a log|xi| I + sigma_0, with sigma_0 the z-derivative of
    // the power family at z = 0 evaluated on the cosphere.
    out.comp(0, 1).plus = PMF::identity(g, m);
    out.comp(0, 1).plus *= a.order();
    out.comp(0, 1).minus = PMF::identity(g, m);
    out.comp(0, 1).minus *= a.order();
    for (int j = 0; j < N; ++j) out.comp(j, 0) = comps[j];
    if (a.has_exact() && a.is_multiplier()) {
        const Symbol base = a;
        out.set_exact(
            [base, theta](double x, double xi) {
                return matrix_log_contour(base.exact(x, xi), theta);
            },
            true);
    }
    return out;
}

Symbol sectorial_projector_symbol(const Symbol& a, double theta, double phi,
                                  const HoloOptions& opt) {
    if (a.log_type() != 0) throw SymbolError("sectorial_projector_symbol: classical symbols only");
    int N = opt.depth > 0 ? opt.depth : a.depth();
    int g = a.grid(), m = a.dim();

    RadialBounds rb = leading_bounds(a);
    double r = rb.rmin / 3.0, R = 3.0 * rb.rmax;
    auto comps = contour_accumulate(
        a, N, opt.tol,
        [&](int scale) { return build_cone_boundary(r, R, theta, phi, scale); },
        [&](const ContourNode& n) { return -1.0 / n.lam; });

    Symbol q(-a.order(), 0, N, g, m);
    for (int j = 0; j < N; ++j) q.comp(j) = comps[j];
    return star_product(a, q, N);
}

}  // namespace psido
