#include "psido/series.hpp"

#include <cmath>

namespace psido {

double arg_cut(cd z, double theta) {
    double a = std::arg(z);  // (-pi, pi]
    while (a >= theta) a -= 2.0 * PI;
    while (a < theta - 2.0 * PI) a += 2.0 * PI;
    return a;
}

cd log_cut(cd z, double theta) {
    if (z == cd(0)) throw std::domain_error("log_cut: zero argument");
    return cd(std::log(std::abs(z)), arg_cut(z, theta));
}

cd pow_cut(cd base, cd expo, double theta) {
    if (base == cd(0)) return cd(0);
    return std::exp(expo * log_cut(base, theta));
}

namespace {

// Round a complex degree difference to an integer shift; reject otherwise.
int integer_shift(cd a, cd b) {
    double d = a.real() - b.real();
    int m = static_cast<int>(std::lround(d));
    if (std::abs(d - m) > kDegreeMergeTol || std::abs(a.imag() - b.imag()) > kDegreeMergeTol)
        throw SeriesError("asymptotic series: degrees differ by a non-integer");
    return m;
}

cd binom(cd p, int k) {
    cd r = 1.0;
    for (int i = 0; i < k; ++i) r *= (p - cd(double(i))) / cd(double(i + 1));
    return r;
}

}  // namespace

ScalarSeries ScalarSeries::constant(cd v, int len) {
    std::vector<cd> c(len, cd(0));
    c[0] = v;
    return ScalarSeries(cd(0), std::move(c));
}

ScalarSeries ScalarSeries::coordinate(int sign, int len) {
    std::vector<cd> c(len, cd(0));
    c[0] = cd(sign >= 0 ? 1.0 : -1.0);
    return ScalarSeries(cd(1.0), std::move(c));
}

bool ScalarSeries::is_zero() const {
    for (const auto& v : c_)
        if (v != cd(0)) return false;
    return true;
}

void ScalarSeries::normalize(double tol) {
    double mx = 0;
    for (const auto& v : c_) mx = std::max(mx, std::abs(v));
    if (mx == 0) {
        degree_ = 0;
        return;
    }
    while (!c_.empty() && std::abs(c_[0]) <= tol * mx) {
        c_.erase(c_.begin());
        c_.push_back(cd(0));
        degree_ -= 1.0;
    }
}

ScalarSeries ScalarSeries::operator-() const {
    ScalarSeries r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

ScalarSeries operator+(const ScalarSeries& a, const ScalarSeries& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const ScalarSeries* hi = &a;
    const ScalarSeries* lo = &b;
    int m = integer_shift(a.degree_, b.degree_);
    if (m < 0) {
        std::swap(hi, lo);
        m = -m;
    }
    int len = std::min(hi->len(), lo->len() + m);
    std::vector<cd> c(len, cd(0));
    for (int j = 0; j < len; ++j) c[j] = hi->coeff(j) + (j >= m ? lo->coeff(j - m) : cd(0));
    ScalarSeries r(hi->degree_, std::move(c));
    r.normalize();
    return r;
}

ScalarSeries operator-(const ScalarSeries& a, const ScalarSeries& b) { return a + (-b); }

ScalarSeries operator*(const ScalarSeries& a, const ScalarSeries& b) {
    if (a.is_zero() || b.is_zero()) return ScalarSeries();
    int len = std::min(a.len(), b.len());
    std::vector<cd> c(len, cd(0));
    for (int j = 0; j < len; ++j)
        for (int k = 0; k <= j; ++k) c[j] += a.coeff(k) * b.coeff(j - k);
    return ScalarSeries(a.degree_ + b.degree_, std::move(c));
}

ScalarSeries ScalarSeries::inverse() const {
    ScalarSeries f = *this;
    f.normalize();
    if (f.is_zero() || f.c_[0] == cd(0)) throw SeriesError("series inverse: vanishing leading term");
    int n = f.len();
    std::vector<cd> c(n, cd(0));
    c[0] = 1.0 / f.c_[0];
    for (int j = 1; j < n; ++j) {
        cd acc = 0;
        for (int k = 1; k <= j; ++k) acc += f.c_[k] * c[j - k];
        c[j] = -acc / f.c_[0];
    }
    return ScalarSeries(-f.degree_, std::move(c));
}

ScalarSeries operator/(const ScalarSeries& a, const ScalarSeries& b) { return a * b.inverse(); }

ScalarSeries ScalarSeries::pow(cd p) const {
    ScalarSeries f = *this;
    f.normalize();
    if (f.is_zero()) {
        if (p.real() > 0) return ScalarSeries();
        throw SeriesError("series pow: zero base with non-positive exponent");
    }
    cd c0 = f.c_[0];
    int n = f.len();
    // f = c0 |xi|^d (1+v), v strictly decaying; (1+v)^p by binomial series.
    std::vector<cd> v(n, cd(0));
    for (int j = 1; j < n; ++j) v[j] = f.c_[j] / c0;
    std::vector<cd> out(n, cd(0));
    out[0] = 1.0;
    std::vector<cd> vk(n, cd(0));
    vk[0] = 1.0;  // v^k accumulator
    for (int k = 1; k < n; ++k) {
        std::vector<cd> nv(n, cd(0));
        for (int j = 0; j < n; ++j)
            for (int i = 0; i <= j; ++i) nv[j] += vk[i] * v[j - i];
        vk = nv;
        cd bk = binom(p, k);
        for (int j = 0; j < n; ++j) out[j] += bk * vk[j];
    }
    cd scale = std::pow(c0, p);  // principal branch on the leading coefficient
    for (auto& o : out) o *= scale;
    return ScalarSeries(p * f.degree_, std::move(out));
}

namespace {

// Apply an entire function with Taylor coefficients t_k at the constant part:
// g(a0 + tail) = sum_k g^{(k)}(a0)/k! * tail^k, tail of strictly negative degree.
ScalarSeries analytic_apply(const ScalarSeries& f, const std::function<cd(int, cd)>& deriv_over_fact) {
    ScalarSeries g = f;
    g.normalize();
    if (!g.is_zero() && g.degree().real() > kDegreeMergeTol)
        throw SeriesError("series: transcendental function of an unbounded expression");
    // Align to degree 0.
    int n = g.len();
    cd a0 = 0;
    std::vector<cd> tail(n, cd(0));
    if (!g.is_zero()) {
        int m = integer_shift(cd(0), g.degree());  // how far below 0 the series starts
        // Re-express with degree 0: tail[k] is the coefficient of |xi|^{-k}.
        for (int j = 0; j + m < n && j < n; ++j)
            if (j + m >= 0) tail[j + m] = g.coeff(j);
        a0 = tail[0];
        tail[0] = 0;
    }
    std::vector<cd> out(n, cd(0));
    out[0] = deriv_over_fact(0, a0);
    std::vector<cd> tk(n, cd(0));
    tk[0] = 1.0;
    for (int k = 1; k < n; ++k) {
        std::vector<cd> nt(n, cd(0));
        for (int j = 0; j < n; ++j)
            for (int i = 0; i <= j; ++i) nt[j] += tk[i] * tail[j - i];
        tk = nt;
        cd dk = deriv_over_fact(k, a0);
        for (int j = 0; j < n; ++j) out[j] += dk * tk[j];
    }
    ScalarSeries r(cd(0), std::move(out));
    r.normalize();
    return r;
}

}  // namespace

ScalarSeries ScalarSeries::exp_() const {
    return analytic_apply(*this, [](int k, cd a0) {
        cd v = std::exp(a0);
        for (int i = 1; i <= k; ++i) v /= double(i);
        return v;
    });
}

ScalarSeries ScalarSeries::sin_() const {
    return analytic_apply(*this, [](int k, cd a0) {
        static const int cyc = 4;
        cd base;
        switch (k % cyc) {
            case 0: base = std::sin(a0); break;
            case 1: base = std::cos(a0); break;
            case 2: base = -std::sin(a0); break;
            default: base = -std::cos(a0); break;
        }
        for (int i = 1; i <= k; ++i) base /= double(i);
        return base;
    });
}

ScalarSeries ScalarSeries::cos_() const {
    return analytic_apply(*this, [](int k, cd a0) {
        cd base;
        switch (k % 4) {
            case 0: base = std::cos(a0); break;
            case 1: base = -std::sin(a0); break;
            case 2: base = -std::cos(a0); break;
            default: base = std::sin(a0); break;
        }
        for (int i = 1; i <= k; ++i) base /= double(i);
        return base;
    });
}

ScalarSeries ScalarSeries::log_() const {
    ScalarSeries g = *this;
    g.normalize();
    if (g.is_zero()) throw SeriesError("series log: zero argument");
    if (std::abs(g.degree()) > kDegreeMergeTol)
        throw SeriesError("series log: argument must have order zero (log|xi| terms are handled at the symbol level)");
    if (g.c_[0] == cd(0)) throw SeriesError("series log: vanishing constant term");
    return analytic_apply(*this, [](int k, cd a0) {
        if (k == 0) return std::log(a0);
        // d^k/dx^k log(x)/k! at a0 = (-1)^{k-1} / (k a0^k)
        cd v = ((k % 2 == 1) ? 1.0 : -1.0) / (double(k) * std::pow(a0, k));
        return v;
    });
}

cd ScalarSeries::eval(double r) const {
    std::vector<cd> terms(len());
    for (int j = 0; j < len(); ++j) terms[j] = c_[j] * std::pow(cd(r, 0), degree_ - cd(double(j)));
    return pairwise_sum(terms);
}

// ---------------------------------------------------------------------------

MatSeries MatSeries::from_scalar_entries(const std::vector<std::vector<ScalarSeries>>& entries,
                                         int len) {
    int m = static_cast<int>(entries.size());
    // Common top degree: max over entries.
    cd top = 0;
    bool any = false;
    for (const auto& row : entries)
        for (const auto& e : row) {
            ScalarSeries t = e;
            t.normalize();
            if (t.is_zero()) continue;
            if (!any || t.degree().real() > top.real()) top = t.degree();
            any = true;
        }
    std::vector<Mat> c(len, Mat::Zero(m, m));
    if (!any) return MatSeries(cd(0), std::move(c));
    for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s) {
            ScalarSeries t = entries[r][s];
            t.normalize();
            if (t.is_zero()) continue;
            int shift = integer_shift(top, t.degree());
            for (int j = 0; j + shift < len; ++j) c[j + shift](r, s) = t.coeff(j);
        }
    return MatSeries(top, std::move(c));
}

Mat MatSeries::coeff(int j) const {
    if (j >= 0 && j < len()) return c_[j];
    return Mat::Zero(dim(), dim());
}

bool MatSeries::is_zero() const {
    for (const auto& m : c_)
        if (m.cwiseAbs().maxCoeff() != 0) return false;
    return true;
}

void MatSeries::normalize(double tol) {
    double mx = 0;
    for (const auto& m : c_) mx = std::max(mx, m.cwiseAbs().maxCoeff());
    if (mx == 0) return;
    while (!c_.empty() && c_[0].cwiseAbs().maxCoeff() <= tol * mx) {
        c_.erase(c_.begin());
        c_.push_back(Mat::Zero(dim(), dim()));
        degree_ -= 1.0;
    }
}

MatSeries operator+(const MatSeries& a, const MatSeries& b) {
    int m = integer_shift(a.degree_, b.degree_);
    const MatSeries* hi = &a;
    const MatSeries* lo = &b;
    if (m < 0) {
        std::swap(hi, lo);
        m = -m;
    }
    int len = std::min(hi->len(), lo->len() + m);
    std::vector<Mat> c(len, Mat::Zero(hi->dim(), hi->dim()));
    for (int j = 0; j < len; ++j) c[j] = hi->coeff(j) + (j >= m ? lo->coeff(j - m) : Mat::Zero(hi->dim(), hi->dim()));
    return MatSeries(hi->degree_, std::move(c));
}

MatSeries operator*(const MatSeries& a, const MatSeries& b) {
    int len = std::min(a.len(), b.len());
    std::vector<Mat> c(len, Mat::Zero(a.dim(), a.dim()));
    for (int j = 0; j < len; ++j)
        for (int k = 0; k <= j; ++k) c[j] += a.coeff(k) * b.coeff(j - k);
    return MatSeries(a.degree_ + b.degree_, std::move(c));
}

MatSeries MatSeries::identity(int dim, int len) {
    std::vector<Mat> c(len, Mat::Zero(dim, dim));
    c[0] = Mat::Identity(dim, dim);
    return MatSeries(cd(0), std::move(c));
}

MatSeries MatSeries::scaled(cd s) const {
    MatSeries r = *this;
    for (auto& m : r.c_) m *= s;
    return r;
}

namespace {

// Split f = s * |xi|^d (I + V): returns scalar s, V coefficients (V[0]=0).
void scalar_leading_split(const MatSeries& f, cd& s, std::vector<Mat>& V) {
    int m = f.dim();
    Mat lead = f.coeff(0);
    s = lead.trace() / double(m);
    if ((lead - s * Mat::Identity(m, m)).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + std::abs(s)))
        throw SeriesError("matrix series: leading coefficient is not scalar");
    V.assign(f.len(), Mat::Zero(m, m));
    for (int j = 1; j < f.len(); ++j) V[j] = f.coeff(j) / s;
}

}  // namespace

MatSeries MatSeries::pow(cd z, double theta) const {
    MatSeries f = *this;
    f.normalize();
    cd s;
    std::vector<Mat> V;
    scalar_leading_split(f, s, V);
    int n = f.len();
    int m = f.dim();
    std::vector<Mat> out(n, Mat::Zero(m, m));
    out[0] = Mat::Identity(m, m);
    std::vector<Mat> Vk(n, Mat::Zero(m, m));
    Vk[0] = Mat::Identity(m, m);
    for (int k = 1; k < n; ++k) {
        std::vector<Mat> nv(n, Mat::Zero(m, m));
        for (int j = 0; j < n; ++j)
            for (int i = 0; i <= j; ++i) nv[j] += Vk[i] * V[j - i];
        Vk = nv;
        cd bk = binom(z, k);
        for (int j = 0; j < n; ++j) out[j] += bk * Vk[j];
    }
    cd scale = pow_cut(s, z, theta);
    for (auto& o : out) o *= scale;
    return MatSeries(z * f.degree_, std::move(out));
}

MatSeries::LogResult MatSeries::log(double theta) const {
    MatSeries f = *this;
    f.normalize();
    cd s;
    std::vector<Mat> V;
    scalar_leading_split(f, s, V);
    int n = f.len();
    int m = f.dim();
    std::vector<Mat> out(n, Mat::Zero(m, m));
    out[0] = log_cut(s, theta) * Mat::Identity(m, m);
    std::vector<Mat> Vk(n, Mat::Zero(m, m));
    Vk[0] = Mat::Identity(m, m);
    for (int k = 1; k < n; ++k) {
        std::vector<Mat> nv(n, Mat::Zero(m, m));
        for (int j = 0; j < n; ++j)
            for (int i = 0; i <= j; ++i) nv[j] += Vk[i] * V[j - i];
        Vk = nv;
        cd ck = ((k % 2 == 1) ? 1.0 : -1.0) / double(k);  // log(1+x) coefficients
        for (int j = 0; j < n; ++j) out[j] += ck * Vk[j];
    }
    LogResult r;
    r.a = f.degree_;
    r.series = MatSeries(cd(0), std::move(out));
    return r;
}

}  // namespace psido
