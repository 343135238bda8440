#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "psido/contour.hpp"
#include "psido/holo_calc.hpp"
#include "psido/multiplier.hpp"

using namespace psido;

TEST_CASE("closed sector contour reproduces Cauchy integrals exactly") {
    // oint lambda^k / (lambda - 2) dlambda / (2 pi i) = 2^k for 2 inside
    Contour c = build_sector_contour(0.5, 10.0, PI, 4);
    for (int k : {0, 1, 2}) {
        cd acc = 0;
        for (const ContourNode& n : c.nodes)
            acc += n.w * std::pow(n.lam, k) / (n.lam - cd(2.0));
        CHECK(std::abs(acc - std::pow(cd(2.0), k)) < 1e-12);
    }
}

TEST_CASE("matrix functions: contour route agrees with eigendecomposition") {
    Mat m(2, 2);
    m << cd(3.0, 0.2), cd(0.4), cd(0.1), cd(2.0, -0.1);
    Mat pc = matrix_power_contour(m, cd(0.37), PI);
    Mat pe = matrix_power_eig(m, cd(0.37), PI);
    CHECK((pc - pe).cwiseAbs().maxCoeff() < 1e-10);
    Mat lc = matrix_log_contour(m, PI);
    Mat le = matrix_log_eig(m, PI);
    CHECK((lc - le).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("matrix log branch follows the cut") {
    Mat m(1, 1);
    m << cd(-4.0, 0.0);
    // cut pi/2: negative reals approached through the lower half plane
    Mat l = matrix_log_eig(m, PI / 2);
    CHECK(std::abs(l(0, 0) - cd(std::log(4.0), -PI)) < 1e-12);
}

TEST_CASE("complex power at z=0 is the identity and powers compose") {
    Operator a = make_power_multiplier("a", "1+n^2", 0.5);
    Symbol p0 = complex_power_symbol(a.symbol, cd(0.0), a.cut);
    Symbol one = Symbol::identity(p0.grid(), p0.dim(), p0.depth());
    CHECK((p0 - one).max_abs() < 1e-12);

    Symbol p(complex_power_symbol(a.symbol, cd(0.3), a.cut));
    Symbol q(complex_power_symbol(a.symbol, cd(0.7), a.cut));
    Symbol pq = star_product(p, q);
    Symbol ref = complex_power_symbol(a.symbol, cd(1.0), a.cut);
    CHECK((pq - ref).max_abs() < 1e-8);
}

TEST_CASE("complex power components match the exact binomial expansion") {
    // (1+n^2)^{-1/2}: compare against the directly constructed multiplier
    Operator a = make_power_multiplier("a", "1+n^2", 1.0);
    Symbol p = complex_power_symbol(a.symbol, cd(-0.25), a.cut);
    Operator ref = make_power_multiplier("ref", "1+n^2", -0.25);
    CHECK((p - ref.symbol).max_abs() < 1e-9);
}

TEST_CASE("log symbol has log type 1 with the order as log coefficient") {
    Operator a = make_power_multiplier("a", "1+n^2", 0.5);
    Symbol l = log_symbol(a.symbol, a.cut);
    CHECK(l.log_type() == 1);
    // the log row is the constant order * I
    auto j0 = l.index_of_degree(cd(0.0));
    REQUIRE(j0.has_value());
    CHECK(std::abs(l.comp(*j0, 1).plus.at(0)(0, 0) - a.order) < 1e-10);
    // classical part at leading order: log(1+n^2)/2 - log|n| -> 0
    CHECK(std::abs(l.comp(*j0, 0).plus.at(0)(0, 0)) < 1e-9);
}

TEST_CASE("log symbol as derivative of the power family") {
    // d/dz at z=0 of the component matrices of A^z equals the classical row
    // of log A (the components are stored at |xi| = 1, where the log|xi| row
    // contributes nothing).
    Operator a = make_power_multiplier("a", "1+n^2", 0.5);
    Symbol l = log_symbol(a.symbol, a.cut);
    double h = 1e-4;
    Symbol ph = complex_power_symbol(a.symbol, cd(h), a.cut);
    Symbol pm = complex_power_symbol(a.symbol, cd(-h), a.cut);
    for (int j = 0; j < l.depth(); ++j) {
        Mat fd = (ph.comp(j, 0).plus.at(0) - pm.comp(j, 0).plus.at(0)) / (2 * h);
        CHECK((fd - l.comp(j, 0).plus.at(0)).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("sectorial projector is smoothing off the spectrum") {
    Operator a = make_power_multiplier("a", "1+n^2", 0.5);  // positive spectrum
    // cone in the upper half plane: contains no spectrum
    Symbol p = sectorial_projector_symbol(a.symbol, PI / 4, 3 * PI / 4);
    CHECK(p.max_abs() < 1e-10);
}

TEST_CASE("resolvent expansion matches the exact resolvent at leading orders") {
    Operator a = make_power_multiplier("a", "1+n^2", 0.5);
    cd lambda(-1.0, 0.5);
    std::vector<Component> b = resolvent_symbols(a.symbol, lambda);
    // j = 0 component at xi = +1: 1/(leading(+1) - lambda) with leading = 1
    cd b0 = b[0].plus.at(0)(0, 0);
    CHECK(std::abs(b0 - 1.0 / (cd(1.0) - lambda)) < 1e-12);
}

TEST_CASE("radial bounds bracket the spectrum") {
    Mat m(2, 2);
    m << cd(3.0), cd(0.1), cd(0.0), cd(0.5);
    RadialBounds rb = radial_bounds(m);
    CHECK(rb.rmin <= 0.5);
    CHECK(rb.rmax >= 3.0);
}
