#include "psido/symbol.hpp"

#include <cmath>

#include "psido/series.hpp"

namespace psido {

Symbol::Symbol(cd order, int log_type, int depth, int grid, int dim)
    : order_(order), log_type_(log_type), depth_(depth), grid_(grid), dim_(dim) {
    comps_.assign(depth, std::vector<Component>(log_type + 1, Component::zero(grid, dim)));
}

Symbol Symbol::identity(int grid, int dim, int depth) {
    Symbol s(cd(0), 0, depth, grid, dim);
    s.comp(0).plus = PMF::identity(grid, dim);
    s.comp(0).minus = PMF::identity(grid, dim);
    s.set_exact([dim](double, double) { return Mat::Identity(dim, dim); }, true);
    return s;
}

Symbol Symbol::constant(const Mat& value, int depth) {
    int dim = static_cast<int>(value.rows());
    Symbol s(cd(0), 0, depth, 1, dim);
    s.comp(0).plus = PMF(value);
    s.comp(0).minus = PMF(value);
    Mat v = value;
    s.set_exact([v](double, double) { return v; }, true);
    return s;
}

std::optional<int> Symbol::index_of_degree(cd target) const {
    double dj = order_.real() - target.real();
    int j = static_cast<int>(std::lround(dj));
    if (j < 0 || j >= depth_) return std::nullopt;
    if (std::abs(dj - j) > kDegreeMergeTol || std::abs(order_.imag() - target.imag()) > kDegreeMergeTol)
        return std::nullopt;
    return j;
}

Symbol& Symbol::operator*=(cd s) {
    for (auto& row : comps_)
        for (auto& c : row) {
            c.plus *= s;
            c.minus *= s;
        }
    if (exact_)
        exact_ = [f = std::move(exact_), s](double x, double xi) {
            return Mat(s * f(x, xi));
        };
    return *this;
}

Symbol operator+(const Symbol& a, const Symbol& b) {
    double d = a.order_.real() - b.order_.real();
    int m = static_cast<int>(std::lround(d));
    if (std::abs(d - m) > kDegreeMergeTol || std::abs(a.order_.imag() - b.order_.imag()) > kDegreeMergeTol)
        throw SymbolError("symbol sum: degree ladders differ by a non-integer");
    if (m < 0) return b + a;
    int log_type = std::max(a.log_type_, b.log_type_);
    int depth = std::min(a.depth_, m + b.depth_);
    int grid = std::max(a.grid_, b.grid_);
    Symbol r(a.order_, log_type, depth, grid, a.dim_);
    for (int j = 0; j < depth; ++j)
        for (int l = 0; l <= log_type; ++l) {
            PMF p = PMF::zero(grid, a.dim_);
            PMF q = PMF::zero(grid, a.dim_);
            if (l <= a.log_type_ && j < a.depth_) {
                p += a.comp(j, l).plus;
                q += a.comp(j, l).minus;
            }
            if (l <= b.log_type_ && j - m >= 0 && j - m < b.depth_) {
                p += b.comp(j - m, l).plus;
                q += b.comp(j - m, l).minus;
            }
            r.comp(j, l) = Component(std::move(p), std::move(q));
        }
    if (a.exact_ && b.exact_) {
        r.exact_ = [fa = a.exact_, fb = b.exact_](double x, double xi) {
            return Mat(fa(x, xi) + fb(x, xi));
        };
        r.multiplier_ = a.multiplier_ && b.multiplier_;
    }
    return r;
}

Symbol operator-(const Symbol& a, const Symbol& b) {
    Symbol nb = b;
    nb *= cd(-1);
    return a + nb;
}

Symbol Symbol::truncated_log_type(int new_log_type, double tol) const {
    double scale = std::max(max_abs(), 1.0);
    for (int j = 0; j < depth_; ++j)
        for (int l = new_log_type + 1; l <= log_type_; ++l)
            if (comp(j, l).max_abs() > tol * scale)
                throw SymbolError("truncated_log_type: non-negligible log component dropped");
    Symbol r(order_, new_log_type, depth_, grid_, dim_);
    for (int j = 0; j < depth_; ++j)
        for (int l = 0; l <= new_log_type; ++l) r.comp(j, l) = comp(j, l);
    r.exact_ = exact_;
    r.multiplier_ = multiplier_;
    return r;
}

double Symbol::max_abs() const {
    double m = 0;
    for (const auto& row : comps_)
        for (const auto& c : row) m = std::max(m, c.max_abs());
    return m;
}

void Symbol::set_exact(std::function<Mat(double, double)> f, bool multiplier) {
    exact_ = std::move(f);
    multiplier_ = multiplier;
}

Mat Symbol::exact(double x, double xi) const {
    if (!exact_) throw SymbolError("symbol has no exact evaluator");
    return exact_(x, xi);
}

Mat Symbol::homog_eval(double x, double xi, const std::function<double(double)>& chi) const {
    double r = std::abs(xi);
    Mat acc = Mat::Zero(dim_, dim_);
    if (r == 0) return acc;
    double w = chi(xi);
    if (w == 0) return acc;
    double lr = std::log(r);
    for (int j = 0; j < depth_; ++j) {
        cd rp = std::pow(cd(r, 0), degree_of(j));
        const bool pos = xi > 0;
        double lpow = 1.0;
        for (int l = 0; l <= log_type_; ++l) {
            const PMF& side = pos ? comp(j, l).plus : comp(j, l).minus;
            if (side.grid() > 0) acc += (w * rp * lpow) * side.eval(x);
            lpow *= lr;
        }
    }
    return acc;
}

double chi_default(double xi) {
    double r = std::abs(xi);
    if (r <= 0.5) return 0.0;
    if (r >= 1.0) return 1.0;
    auto f = [](double t) { return t > 0 ? std::exp(-1.0 / t) : 0.0; };
    double a = f(2.0 * r - 1.0);
    double b = f(2.0 - 2.0 * r);
    return a / (a + b);
}

double chi_alt(double xi) {
    double r = std::abs(xi);
    if (r <= 0.5) return 0.0;
    if (r >= 1.0) return 1.0;
    auto f = [](double t) { return t > 0 ? std::exp(-1.0 / (t * t)) : 0.0; };
    double a = f(2.0 * r - 1.0);
    double b = f(2.0 - 2.0 * r);
    return a / (a + b);
}

CompTable table_deriv_xi(const CompTable& t, cd top_order) {
    int depth = static_cast<int>(t.size());
    int L = depth ? static_cast<int>(t[0].size()) - 1 : 0;
    CompTable out(depth);
    for (int j = 0; j < depth; ++j) {
        out[j].resize(L + 1);
        cd d = top_order - cd(double(j));
        for (int l = 0; l <= L; ++l) {
            // d/dxi [c |xi|^d log^l] = sgn(xi)|xi|^{d-1}(d c log^l + l c log^{l-1});
            // collect the log^l row: d * (this row) + (l+1) * (row above).
            PMF p = t[j][l].plus;
            p *= d;
            PMF m = t[j][l].minus;
            m *= -d;
            if (l + 1 <= L) {
                PMF p2 = t[j][l + 1].plus;
                p2 *= cd(double(l + 1));
                p += p2;
                PMF m2 = t[j][l + 1].minus;
                m2 *= cd(-double(l + 1));
                m += m2;
            }
            out[j][l] = Component(std::move(p), std::move(m));
        }
    }
    return out;
}

CompTable table_deriv_x(const CompTable& t) {
    CompTable out(t.size());
    for (size_t j = 0; j < t.size(); ++j) {
        out[j].resize(t[j].size());
        for (size_t l = 0; l < t[j].size(); ++l)
            out[j][l] = Component(t[j][l].plus.derivative(), t[j][l].minus.derivative());
    }
    return out;
}

Symbol star_product(const Symbol& a, const Symbol& b, int depth) {
    int N = depth > 0 ? depth : std::min(a.depth(), b.depth());
    int L = a.log_type() + b.log_type();
    int grid = std::max(a.grid(), b.grid());
    Symbol r(a.order() + b.order(), L, N, grid, a.dim());

    CompTable ta(a.depth()), tb(b.depth());
    for (int j = 0; j < a.depth(); ++j) {
        ta[j].resize(a.log_type() + 1);
        for (int l = 0; l <= a.log_type(); ++l) ta[j][l] = a.comp(j, l);
    }
    for (int j = 0; j < b.depth(); ++j) {
        tb[j].resize(b.log_type() + 1);
        for (int l = 0; l <= b.log_type(); ++l) tb[j][l] = b.comp(j, l);
    }

    cd coef = 1.0;
    for (int al = 0; al < N; ++al) {
        if (al > 0) {
            ta = table_deriv_xi(ta, a.order() - cd(double(al - 1)));
            tb = table_deriv_x(tb);
            coef *= cd(0, -1) / cd(double(al));
        }
        for (int j1 = 0; j1 < static_cast<int>(ta.size()); ++j1) {
            for (int j2 = 0; j2 < static_cast<int>(tb.size()); ++j2) {
                int j = al + j1 + j2;
                if (j >= N) continue;
                for (int l1 = 0; l1 <= a.log_type(); ++l1)
                    for (int l2 = 0; l2 <= b.log_type(); ++l2) {
                        PMF p = PMF::matmul(ta[j1][l1].plus, tb[j2][l2].plus);
                        p *= coef;
                        PMF m = PMF::matmul(ta[j1][l1].minus, tb[j2][l2].minus);
                        m *= coef;
                        r.comp(j, l1 + l2).plus += p;
                        r.comp(j, l1 + l2).minus += m;
                    }
            }
        }
    }
    // Multiplier symbols compose pointwise in the mode variable, so the
    // exact evaluator of the product is the pointwise matrix product.
    if (a.has_exact() && b.has_exact() && a.is_multiplier() && b.is_multiplier())
        r.set_exact(
            [fa = a, fb = b](double x, double xi) {
                return Mat(fa.exact(x, xi) * fb.exact(x, xi));
            },
            true);
    return r;
}

Symbol inverse_symbol(const Symbol& a, int depth) {
    if (a.log_type() != 0) throw SymbolError("inverse_symbol: classical symbols only");
    int N = depth > 0 ? depth : a.depth();
    int grid = a.grid();
    Symbol r(-a.order(), 0, N, grid, a.dim());

    r.comp(0) = Component(a.comp(0).plus.inverse(), a.comp(0).minus.inverse());

    // Cached derivative tables.
    std::vector<CompTable> a_dxi(N);  // d_xi^al of a
    a_dxi[0].resize(a.depth());
    for (int j = 0; j < a.depth(); ++j) a_dxi[0][j] = {a.comp(j)};
    for (int al = 1; al < N; ++al)
        a_dxi[al] = table_deriv_xi(a_dxi[al - 1], a.order() - cd(double(al - 1)));

    // r_dx[al][l] = d_x^al of r-component l (filled progressively).
    std::vector<std::vector<Component>> r_dx(N, std::vector<Component>(N));
    auto push = [&](int l) {
        r_dx[0][l] = r.comp(l);
        for (int al = 1; al < N; ++al)
            r_dx[al][l] = Component(r_dx[al - 1][l].plus.derivative(),
                                    r_dx[al - 1][l].minus.derivative());
    };
    push(0);

    for (int j = 1; j < N; ++j) {
        PMF tp = PMF::zero(grid, a.dim());
        PMF tm = PMF::zero(grid, a.dim());
        cd coef = 1.0;
        for (int al = 0; al <= j; ++al) {
            if (al > 0) coef *= cd(0, -1) / cd(double(al));
            for (int k = 0; k + al <= j; ++k) {
                int l = j - k - al;
                if (l >= j) continue;  // excludes (k,al) = (0,0)
                if (k >= a.depth()) continue;
                PMF p = PMF::matmul(a_dxi[al][k][0].plus, r_dx[al][l].plus);
                p *= coef;
                PMF m = PMF::matmul(a_dxi[al][k][0].minus, r_dx[al][l].minus);
                m *= coef;
                tp += p;
                tm += m;
            }
        }
        PMF jp = PMF::matmul(r.comp(0).plus, tp);
        jp *= cd(-1);
        PMF jm = PMF::matmul(r.comp(0).minus, tm);
        jm *= cd(-1);
        r.comp(j) = Component(std::move(jp), std::move(jm));
        push(j);
    }
    return r;
}

Symbol commutator_symbol(const Symbol& a, const Symbol& b, int depth) {
    return star_product(a, b, depth) - star_product(b, a, depth);
}

Symbol star_power(const Symbol& a, int k, int depth) {
    if (k < 0) throw SymbolError("star_power: negative exponent");
    int N = depth > 0 ? depth : a.depth();
    if (k == 0) return Symbol::identity(a.grid(), a.dim(), N);
    Symbol acc = a;
    for (int i = 1; i < k; ++i) acc = star_product(a, acc, N);
    return acc;
}

}  // namespace psido
