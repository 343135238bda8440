#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "psido/numerics.hpp"

using namespace psido;

TEST_CASE("pairwise_sum matches naive sum and is deterministic") {
    std::vector<cd> v;
    for (int i = 1; i <= 1000; ++i) v.push_back(cd(1.0 / i, -1.0 / (i * i)));
    cd naive = 0;
    for (cd x : v) naive += x;
    cd p = pairwise_sum(v);
    CHECK(std::abs(p - naive) < 1e-12);
    CHECK(pairwise_sum(v) == p);  // bitwise repeatable
}

TEST_CASE("gauss_legendre integrates polynomials of degree 2n-1 exactly") {
    const QuadRule& q = gauss_legendre(8);
    double acc = 0;
    for (size_t i = 0; i < q.x.size(); ++i) acc += q.w[i] * std::pow(q.x[i], 14);
    CHECK(acc == doctest::Approx(2.0 / 15.0).epsilon(1e-14));
}

TEST_CASE("gl_integrate on a smooth function") {
    cd v = gl_integrate([](double t) { return cd(std::cos(t)); }, 0.0, 1.0, 16);
    CHECK(std::abs(v - std::sin(1.0)) < 1e-14);
}

TEST_CASE("gl_integrate_adaptive reaches the requested tolerance") {
    double err = 0;
    cd v = gl_integrate_adaptive([](double t) { return cd(std::exp(-t * t)); }, 0.0,
                                 5.0, 1e-12, 4, 16, &err);
    CHECK(std::abs(v - 0.88622692545275801) < 1e-11);  // sqrt(pi)/2
    CHECK(err < 1e-11);
}

TEST_CASE("hurwitz_zeta reproduces Riemann zeta values") {
    // zeta(2) = pi^2/6, zeta(s,1) = zeta(s)
    CHECK(std::abs(hurwitz_zeta(cd(2.0), 1.0) - PI * PI / 6.0) < 1e-13);
    // zeta(0,q) = 1/2 - q
    CHECK(std::abs(hurwitz_zeta(cd(1e-30), 2.5) - cd(0.5 - 2.5)) < 1e-12);
    // zeta(-1) = -1/12
    CHECK(std::abs(hurwitz_zeta(cd(-1.0), 1.0) - cd(-1.0 / 12.0)) < 1e-13);
    // splitting identity zeta(s,q) = q^{-s} + zeta(s,q+1)
    cd s(1.7, 0.3);
    cd lhs = hurwitz_zeta(s, 3.0);
    cd rhs = std::pow(cd(3.0), -s) + hurwitz_zeta(s, 4.0);
    CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("hurwitz_zeta_wide keeps long-double accuracy at negative s") {
    // zeta(-2,q) = -B_3(q)/3 with B_3(q) = q^3 - 1.5 q^2 + 0.5 q
    long double q = 4097.0L;
    long double ref = -(q * q * q - 1.5L * q * q + 0.5L * q) / 3.0L;
    cld v = hurwitz_zeta_wide(cld(-2.0L), q);
    CHECK(std::abs((double)((v.real() - ref) / ref)) < 1e-17);
}

TEST_CASE("hurwitz_zeta_ds matches a centered difference") {
    cd s(0.3, 0.0);
    double q = 7.0;
    cd num = richardson_diff([&](double h) { return hurwitz_zeta(s + cd(h), q); }, 1e-4);
    CHECK(std::abs(hurwitz_zeta_ds(s, q) - num) < 1e-9);
    // derivative is finite and smooth through s=0
    CHECK(std::isfinite(std::abs(hurwitz_zeta_ds(cd(0.0), q))));
    // zeta'(0) = -log(2 pi)/2 at q=1
    CHECK(std::abs(hurwitz_zeta_ds(cd(1e-30), 1.0) - cd(-0.5 * std::log(2 * PI))) < 1e-12);
}

TEST_CASE("digamma and the s=1 finite part") {
    // digamma(1) = -gamma
    CHECK(digamma(1.0) == doctest::Approx(-0.57721566490153286).epsilon(1e-13));
    CHECK(hurwitz_fp1(1.0) == doctest::Approx(0.57721566490153286).epsilon(1e-13));
}

TEST_CASE("powlog closed forms") {
    double L = 50.0;
    // int_1^L t^2 dt
    CHECK(std::abs(powlog_int(cd(2.0), 0, L) - cd((L * L * L - 1.0) / 3.0)) < 1e-9);
    // int_1^L log t / t dt = log^2 L / 2
    CHECK(std::abs(powlog_int(cd(-1.0), 1, L) - cd(0.5 * std::log(L) * std::log(L))) <
          1e-12);
    // fp of int_L^inf t^{-2} dt = 1/L  (convergent case: the true tail)
    CHECK(std::abs(powlog_tail_fp(cd(-2.0), 0, L) - cd(1.0 / L)) < 1e-12);
}

TEST_CASE("laurent_fit recovers pole and regular coefficients") {
    // f(z) = 3/z + 2 + z - 0.5 z^2
    std::vector<cd> zs, fs;
    for (int k : {-4, -3, -2, -1, 1, 2, 3, 4}) {
        cd z(0.01 * k);
        zs.push_back(z);
        fs.push_back(3.0 / z + 2.0 + z - 0.5 * z * z);
    }
    auto c = laurent_fit(zs, fs, -1, 4);
    CHECK(std::abs(c[0] - cd(3.0)) < 1e-10);
    CHECK(std::abs(c[1] - cd(2.0)) < 1e-10);
    CHECK(std::abs(c[2] - cd(1.0)) < 1e-7);
    CHECK(std::abs(c[3] - cd(-0.5)) < 1e-5);
}

TEST_CASE("richardson_diff is fourth-order accurate") {
    auto d = richardson_diff([](double t) { return std::exp(2.0 * t); }, 1e-2);
    CHECK(std::abs(d - 2.0) < 1e-9);
}
