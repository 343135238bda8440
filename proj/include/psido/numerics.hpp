#pragma once

// Shared numeric kernels: deterministic reductions, Gauss-Legendre rules,
// Euler-Maclaurin continuation of the Hurwitz zeta function, finite-part
// integrals of power-log tails, and small least-squares Laurent fits.

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace psido {

using cd = std::complex<double>;
using cld = std::complex<long double>;  // extended-precision accumulator
using Mat = Eigen::MatrixXcd;

constexpr double PI = 3.14159265358979323846264338327950288;

// Deterministic pairwise reduction (order-independent of compiler fusion,
// fixed recursion pattern).
cd pairwise_sum(const std::vector<cd>& v);
double pairwise_sum(const std::vector<double>& v);
// Extended-precision variants for sums whose finite part cancels many digits.
cd pairwise_sum(const std::vector<cld>& v);
cld pairwise_sum_wide(const std::vector<cld>& v);

// Gauss-Legendre nodes/weights on [-1,1].
struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;
};
const QuadRule& gauss_legendre(int n);

// Integrate f over [a,b] with n-point Gauss-Legendre.
cd gl_integrate(const std::function<cd(double)>& f, double a, double b, int n);

// Adaptive: split [a,b] into panels (geometric refinement toward larger |t|
// is the caller's job), double the panel count until the value settles.
cd gl_integrate_adaptive(const std::function<cd(double)>& f, double a, double b,
                         double tol, int base_panels = 4, int nodes = 16,
                         double* err_out = nullptr);

// Bernoulli numbers B_{2k}, k >= 1.
double bernoulli2(int k);

// Digamma for real q > 0.
double digamma(double q);

// Hurwitz zeta zeta(s,q) = sum_{k>=0} (q+k)^{-s}, continued in s via
// Euler-Maclaurin; q > 0 real, s complex, s != 1.
cd hurwitz_zeta(cd s, double q);

// Extended-precision variants for tail continuation: mode sums cancel the
// direct part against tails of magnitude ~M^3, so the tails need long-double
// accuracy for the finite part to stay M-independent.
cld hurwitz_zeta_wide(cld s, long double q);

cld hurwitz_zeta_ds_wide(cld s, long double q);
// d/ds zeta(s,q).
cd hurwitz_zeta_ds(cd s, double q);
// Finite part of zeta(s,q) at the pole s=1 (Laurent constant) = -digamma(q).
double hurwitz_fp1(double q);

// Closed forms for power-log tails.
// F(d,l,L) = int_1^L t^d log^l t dt  (exact).
cd powlog_int(cd d, int l, double L);
// Finite part (as R->infinity, dropping R^{d+1} log^p R and log^{p} R terms)
// of int_L^inf t^d log^l t dt.
cd powlog_tail_fp(cd d, int l, double L);

// Least-squares fit of samples (z_i, f_i) to sum_{k=kmin}^{kmax} c_k z^k.
// Returns coefficients indexed k-kmin.
std::vector<cd> laurent_fit(const std::vector<cd>& z, const std::vector<cd>& f,
                            int kmin, int kmax);

// Central difference with one Richardson step: f at +-h and +-h/2.
// d/dt f(t)|_0 ~ (4 D(h/2) - D(h)) / 3,  D(h) = (f(h)-f(-h))/(2h).
template <typename F>
auto richardson_diff(F&& f, double h) -> decltype(f(0.0)) {
    auto d1 = (f(h) - f(-h)) / (2.0 * h);
    auto d2 = (f(h / 2) - f(-h / 2)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

}  // namespace psido
