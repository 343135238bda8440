#include "psido/numerics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace psido {

namespace {

template <typename T>
T pairwise_impl(const T* v, size_t n) {
    if (n == 0) return T(0);
    if (n == 1) return v[0];
    if (n == 2) return v[0] + v[1];
    size_t half = n / 2;
    return pairwise_impl(v, half) + pairwise_impl(v + half, n - half);
}

}  // namespace

cd pairwise_sum(const std::vector<cd>& v) { return pairwise_impl(v.data(), v.size()); }
double pairwise_sum(const std::vector<double>& v) { return pairwise_impl(v.data(), v.size()); }
cd pairwise_sum(const std::vector<cld>& v) {
    cld s = pairwise_impl(v.data(), v.size());
    return cd(double(s.real()), double(s.imag()));
}
cld pairwise_sum_wide(const std::vector<cld>& v) { return pairwise_impl(v.data(), v.size()); }

const QuadRule& gauss_legendre(int n) {
    static std::map<int, QuadRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    QuadRule r;
    r.x.resize(n);
    r.w.resize(n);
    // Newton iteration from Chebyshev initial guesses.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(PI * (i + 0.75) / (n + 0.5));
        double p1 = 0, dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            p1 = 1.0;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * x * p2 - j * p3) / (j + 1.0);
            }
            dp = n * (x * p1 - p2) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    return cache.emplace(n, std::move(r)).first->second;
}

cd gl_integrate(const std::function<cd(double)>& f, double a, double b, int n) {
    const QuadRule& r = gauss_legendre(n);
    double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    std::vector<cd> terms(n);
    for (int i = 0; i < n; ++i) terms[i] = f(c + hw * r.x[i]) * (hw * r.w[i]);
    return pairwise_sum(terms);
}

cd gl_integrate_adaptive(const std::function<cd(double)>& f, double a, double b,
                         double tol, int base_panels, int nodes, double* err_out) {
    auto eval = [&](int panels) {
        std::vector<cd> parts(panels);
        double h = (b - a) / panels;
        for (int p = 0; p < panels; ++p)
            parts[p] = gl_integrate(f, a + p * h, a + (p + 1) * h, nodes);
        return pairwise_sum(parts);
    };
    cd prev = eval(base_panels);
    int panels = base_panels;
    double err = std::abs(prev);
    for (int round = 0; round < 12; ++round) {
        panels *= 2;
        cd cur = eval(panels);
        err = std::abs(cur - prev);
        prev = cur;
        if (err < tol * (1.0 + std::abs(cur))) break;
    }
    if (err_out) *err_out = err;
    return prev;
}

double bernoulli2(int k) {
    static const double b[] = {
        1.0 / 6,      -1.0 / 30,     1.0 / 42,      -1.0 / 30,
        5.0 / 66,     -691.0 / 2730, 7.0 / 6,       -3617.0 / 510,
        43867.0 / 798, -174611.0 / 330, 854513.0 / 138, -236364091.0 / 2730};
    if (k < 1 || k > 12) throw std::out_of_range("bernoulli2: k out of range");
    return b[k - 1];
}

double digamma(double q) {
    if (q <= 0) throw std::domain_error("digamma: q must be positive");
    double acc = 0.0;
    while (q < 12.0) {
        acc -= 1.0 / q;
        q += 1.0;
    }
    double inv2 = 1.0 / (q * q);
    double res = std::log(q) - 0.5 / q;
    double p = inv2;
    for (int j = 1; j <= 7; ++j) {
        res -= bernoulli2(j) / (2.0 * j) * p;
        p *= inv2;
    }
    return res + acc;
}

namespace {

// Euler-Maclaurin pieces shared by hurwitz_zeta and its s-derivative.
struct EmSetup {
    int K;        // directly summed terms
    double Q;     // q + K
    int J = 8;    // Bernoulli terms
};

EmSetup em_setup(cd s, double q) {
    EmSetup e;
    double need = std::max(16.0, 1.5 * std::abs(s));
    e.K = (q >= need) ? 0 : static_cast<int>(std::ceil(need - q));
    e.Q = q + e.K;
    return e;
}

}  // namespace

cld hurwitz_zeta_wide(cld s, long double q) {
    if (q <= 0) throw std::domain_error("hurwitz_zeta: q must be positive");
    if (std::abs(s - cld(1.0L)) < 1e-12L)
        throw std::domain_error("hurwitz_zeta: pole at s=1");
    EmSetup e = em_setup(cd(double(s.real()), double(s.imag())), double(q));
    std::vector<cld> direct(e.K);
    for (int k = 0; k < e.K; ++k) direct[k] = std::pow(cld(q + k, 0.0L), -s);
    cld res = pairwise_sum_wide(direct);
    long double Q = q + e.K;
    long double lQ = std::log(Q);
    cld Qms = std::exp(-s * lQ);
    res += Q * Qms / (s - cld(1.0L));
    res += 0.5L * Qms;
    // sum_j B_{2j}/(2j)! * s(s+1)...(s+2j-2) * Q^{-s-2j+1}
    cld poch = s;                  // rising product up to s+2j-2
    long double fact = 2.0L;       // (2j)!
    long double Qpow = 1.0L / Q;   // Q^{-2j+1}
    for (int j = 1; j <= e.J; ++j) {
        res += cld(bernoulli2(j)) / fact * poch * Qms * Qpow;
        poch *= (s + cld(2.0L * j - 1.0L)) * (s + cld(2.0L * j));
        fact *= (2.0L * j + 1.0L) * (2.0L * j + 2.0L);
        Qpow /= Q * Q;
    }
    return res;
}

cd hurwitz_zeta(cd s, double q) {
    cld r = hurwitz_zeta_wide(cld(s.real(), s.imag()), q);
    return cd(double(r.real()), double(r.imag()));
}

cld hurwitz_zeta_ds_wide(cld s, long double q) {
    if (q <= 0) throw std::domain_error("hurwitz_zeta_ds: q must be positive");
    if (std::abs(s - cld(1.0L)) < 1e-12L)
        throw std::domain_error("hurwitz_zeta_ds: pole at s=1");
    EmSetup e = em_setup(cd(double(s.real()), double(s.imag())), double(q));
    std::vector<cld> direct(e.K);
    for (int k = 0; k < e.K; ++k) {
        long double a = q + k;
        direct[k] = -std::log(a) * std::pow(cld(a, 0.0L), -s);
    }
    cld res = pairwise_sum_wide(direct);
    long double Q = q + e.K;
    long double lQ = std::log(Q);
    cld Qms = std::exp(-s * lQ);
    res += -Q * Qms * lQ / (s - cld(1.0L)) - Q * Qms / ((s - cld(1.0L)) * (s - cld(1.0L)));
    res += -0.5L * lQ * Qms;
    // Differentiate B-terms: d/ds [poch(s,2j-1) Q^{-s-2j+1}]
    //   = (d/ds poch) * Q^{..} - poch * Q^{..} * log Q, with the pochhammer
    // derivative as a leave-one-out sum (safe when a factor s+i vanishes).
    cld poch = s;
    long double fact = 2.0L;
    long double Qpow = 1.0L / Q;
    for (int j = 1; j <= e.J; ++j) {
        cld dpoch = 0.0L;
        for (int i = 0; i <= 2 * j - 2; ++i) {
            cld prod = 1.0L;
            for (int k = 0; k <= 2 * j - 2; ++k)
                if (k != i) prod *= s + cld((long double)k);
            dpoch += prod;
        }
        res += cld(bernoulli2(j)) / fact * Qms * Qpow * (dpoch - poch * lQ);
        poch *= (s + cld(2.0L * j - 1.0L)) * (s + cld(2.0L * j));
        fact *= (2.0L * j + 1.0L) * (2.0L * j + 2.0L);
        Qpow /= Q * Q;
    }
    return res;
}

cd hurwitz_zeta_ds(cd s, double q) {
    cld r = hurwitz_zeta_ds_wide(cld(s.real(), s.imag()), q);
    return cd(double(r.real()), double(r.imag()));
}

double hurwitz_fp1(double q) { return -digamma(q); }

cd powlog_int(cd d, int l, double L) {
    double lL = std::log(L);
    if (std::abs(d + 1.0) < 1e-12) {
        // int_1^L log^l t / t dt = log^{l+1} L / (l+1)
        return std::pow(lL, l + 1) / double(l + 1);
    }
    // Recurrence: F(d,l) = (L^{d+1} log^l L - l F(d,l-1)) / (d+1).
    cd Ld1 = std::exp((d + 1.0) * lL);
    cd F = (Ld1 - 1.0) / (d + 1.0);
    double lp = 1.0;
    for (int j = 1; j <= l; ++j) {
        lp *= lL;
        F = (Ld1 * lp - double(j) * F) / (d + 1.0);
    }
    return F;
}

cd powlog_tail_fp(cd d, int l, double L) {
    if (std::abs(d + 1.0) < 1e-12) {
        // fp int_L^R log^l t/t dt = -log^{l+1} L/(l+1) (log^{l+1} R dropped)
        return -std::pow(std::log(L), l + 1) / double(l + 1);
    }
    // Constant term of int_1^R minus the exact part below L:
    // fp int_1^inf t^d log^l t dt = (-1)^{l+1} l! / (d+1)^{l+1}.
    double lfact = 1.0;
    for (int j = 2; j <= l; ++j) lfact *= j;
    cd fp1 = ((l % 2 == 0) ? -1.0 : 1.0) * lfact / std::pow(d + 1.0, l + 1);
    return fp1 - powlog_int(d, l, L);
}

std::vector<cd> laurent_fit(const std::vector<cd>& z, const std::vector<cd>& f,
                            int kmin, int kmax) {
    int rows = static_cast<int>(z.size());
    int cols = kmax - kmin + 1;
    if (rows < cols) throw std::invalid_argument("laurent_fit: underdetermined");
    // Fit in u = z / max|z| so the Vandermonde columns are all O(1);
    // otherwise the powers differ by ~|z|^(kmax-kmin) in scale and the small
    // coefficients come back polluted.
    double s = 0;
    for (const cd& zi : z) s = std::max(s, std::abs(zi));
    if (s == 0) throw std::invalid_argument("laurent_fit: zero sample point");
    Eigen::MatrixXcd A(rows, cols);
    Eigen::VectorXcd b(rows);
    for (int i = 0; i < rows; ++i) {
        b(i) = f[i];
        for (int k = 0; k < cols; ++k) A(i, k) = std::pow(z[i] / s, kmin + k);
    }
    Eigen::VectorXcd c = A.colPivHouseholderQr().solve(b);
    std::vector<cd> out(cols);
    for (int k = 0; k < cols; ++k) out[k] = c(k) / std::pow(cd(s), kmin + k);
    return out;
}

}  // namespace psido
