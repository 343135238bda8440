#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "psido/series.hpp"

using namespace psido;

namespace {

// Evaluate a MatSeries truncation at |xi| = r.
Mat mat_eval(const MatSeries& s, double r) {
    Mat acc = Mat::Zero(s.dim(), s.dim());
    for (int j = 0; j < s.len(); ++j)
        acc += s.coeff(j) * std::pow(cd(r), s.degree() - cd(double(j)));
    return acc;
}

}  // namespace

TEST_CASE("scalar series arithmetic matches pointwise evaluation") {
    // f = n + 2 on the plus side, g = 1/f
    ScalarSeries n = ScalarSeries::coordinate(+1);
    ScalarSeries f = n + ScalarSeries::constant(cd(2.0));
    ScalarSeries g = f.inverse();
    double r = 1e4;
    CHECK(std::abs(f.eval(r) - cd(r + 2.0)) < 1e-9);
    CHECK(std::abs(g.eval(r) - cd(1.0 / (r + 2.0))) < 1e-18);
    ScalarSeries one = f * g;
    CHECK(std::abs(one.eval(r) - cd(1.0)) < 1e-12);
}

TEST_CASE("scalar series pow matches closed form") {
    ScalarSeries n = ScalarSeries::coordinate(+1);
    ScalarSeries f = n * n + ScalarSeries::constant(cd(1.0));  // 1 + n^2
    ScalarSeries h = f.pow(cd(0.5));
    double r = 300.0;
    CHECK(std::abs(h.eval(r) - cd(std::sqrt(1.0 + r * r))) < 1e-12);
    // pow respects exponent addition
    ScalarSeries p = f.pow(cd(0.3)) * f.pow(cd(0.7));
    CHECK(std::abs(p.eval(r) - f.eval(r)) < 1e-6);
}

TEST_CASE("coordinate sign matters on the minus side") {
    ScalarSeries nm = ScalarSeries::coordinate(-1);
    // On the minus side the series is evaluated in |xi|, so n = -|xi|.
    CHECK(std::abs(nm.eval(100.0) - cd(-100.0)) < 1e-12);
}

TEST_CASE("degree-0 transcendental series") {
    ScalarSeries n = ScalarSeries::coordinate(+1);
    ScalarSeries u = n.inverse();  // 1/n, degree -1
    double r = 50.0;
    CHECK(std::abs(u.exp_().eval(r) - std::exp(1.0 / r)) < 1e-14);
    CHECK(std::abs(u.sin_().eval(r) - std::sin(1.0 / r)) < 1e-14);
    CHECK(std::abs(u.cos_().eval(r) - std::cos(1.0 / r)) < 1e-14);
    ScalarSeries w = ScalarSeries::constant(cd(2.0)) + u;
    CHECK(std::abs(w.log_().eval(r) - std::log(2.0 + 1.0 / r)) < 1e-14);
}

TEST_CASE("MatSeries product matches entrywise evaluation") {
    ScalarSeries n = ScalarSeries::coordinate(+1);
    ScalarSeries f = n + ScalarSeries::constant(cd(1.0));
    std::vector<std::vector<ScalarSeries>> e = {
        {f, ScalarSeries::constant(cd(0.5))},
        {ScalarSeries(), f}};
    MatSeries m = MatSeries::from_scalar_entries(e);
    MatSeries m2 = m * m;
    double r = 2000.0;
    Mat a = mat_eval(m, r);
    CHECK(((mat_eval(m2, r) - a * a).cwiseAbs().maxCoeff()) < 1e-6);
}

TEST_CASE("MatSeries pow and log are mutually consistent") {
    ScalarSeries n = ScalarSeries::coordinate(+1);
    ScalarSeries f = n + ScalarSeries::constant(cd(0.3));
    MatSeries m = MatSeries::from_scalar_entries({{f}});
    MatSeries h = m.pow(cd(0.5), PI);
    double r = 5000.0;
    CHECK(std::abs(mat_eval(h, r)(0, 0) - std::sqrt(r + 0.3)) < 1e-10);
    auto lg = m.log(PI);
    CHECK(std::abs(lg.a - cd(1.0)) < 1e-12);  // log|xi| coefficient = degree
    cd val = lg.a * std::log(r) + mat_eval(lg.series, r)(0, 0);
    CHECK(std::abs(val - std::log(r + 0.3)) < 1e-12);
}

TEST_CASE("branch helpers measure args against the cut ray") {
    // cut along the negative real axis: principal branch
    CHECK(arg_cut(cd(0.0, 1.0), PI) == doctest::Approx(PI / 2));
    CHECK(arg_cut(cd(-1.0, -1e-12), PI) == doctest::Approx(-PI).epsilon(1e-6));
    // cut along the positive imaginary axis: positive reals keep arg 0
    CHECK(arg_cut(cd(1.0, 0.0), PI / 2) == doctest::Approx(0.0));
    // ... and negative reals are reached through the lower half plane
    CHECK(arg_cut(cd(-1.0, 0.0), PI / 2) == doctest::Approx(-PI));
    CHECK(std::abs(pow_cut(cd(4.0), cd(0.5), PI) - cd(2.0)) < 1e-14);
    CHECK(std::abs(log_cut(cd(-2.0, 0.0), PI / 2) - cd(std::log(2.0), -PI)) < 1e-14);
}
