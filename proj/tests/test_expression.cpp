#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "psido/expression.hpp"

using namespace psido;

namespace {

cd num(const std::string& s, cd n) {
    NumericEnv env;
    env.n = n;
    return eval_numeric(parse_expression(s), env);
}

}  // namespace

TEST_CASE("numeric evaluation of arithmetic and precedence") {
    CHECK(std::abs(num("1+2*3", 0.0) - cd(7.0)) < 1e-15);
    CHECK(std::abs(num("(1+2)*3", 0.0) - cd(9.0)) < 1e-15);
    CHECK(std::abs(num("2^3^2", 0.0) - cd(512.0)) < 1e-12);  // right-associative
    CHECK(std::abs(num("-n^2", 3.0) - cd(-9.0)) < 1e-12);    // unary binds loosely
    CHECK(std::abs(num("2^-1", 0.0) - cd(0.5)) < 1e-15);     // unary minus exponent
    CHECK(std::abs(num("1++2", 0.0) - cd(3.0)) < 1e-15);     // unary plus allowed
}

TEST_CASE("builtin functions and constants") {
    CHECK(std::abs(num("sqrt(1+n^2)", 2.0) - cd(std::sqrt(5.0))) < 1e-15);
    CHECK(std::abs(num("sin(pi/2)", 0.0) - cd(1.0)) < 1e-15);
    CHECK(std::abs(num("exp(log(n))", 4.0) - cd(4.0)) < 1e-12);
    CHECK(std::abs(num("i*i", 0.0) - cd(-1.0)) < 1e-15);
}

TEST_CASE("variables x and xi evaluate from the environment") {
    NumericEnv env;
    env.x = cd(0.5);
    env.xi = cd(3.0);
    cd v = eval_numeric(parse_expression("(2+sin(x))*(1+xi^2)"), env);
    CHECK(std::abs(v - cd((2.0 + std::sin(0.5)) * 10.0)) < 1e-12);
}

TEST_CASE("parse errors carry a position") {
    CHECK_THROWS_AS(parse_expression("sin(1"), ParseError);
    CHECK_THROWS_AS(parse_expression(""), ParseError);
    try {
        parse_expression("1+*2");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position >= 2);
    }
}

TEST_CASE("unknown identifiers are rejected") {
    CHECK_THROWS(parse_expression("foo(3)"));
    NumericEnv env;  // n unset
    CHECK_THROWS(eval_numeric(parse_expression("n+1"), env));
}

TEST_CASE("uses_variable walks the whole tree") {
    ExprPtr e = parse_expression("sqrt(1+xi^2)*sin(x)");
    CHECK(uses_variable(e, "xi"));
    CHECK(uses_variable(e, "x"));
    CHECK_FALSE(uses_variable(e, "n"));
}

TEST_CASE("series semantics agree with numeric evaluation at large n") {
    ExprPtr e = parse_expression("(1+n^2)^0.5 + 3/n");
    SeriesEnv env{+1, std::nullopt, true, false};
    ScalarSeries s = eval_series(e, env);
    double r = 1e3;
    NumericEnv nenv;
    nenv.n = cd(r);
    CHECK(std::abs(s.eval(r) - eval_numeric(e, nenv)) < 1e-10);
    // minus side: n = -|xi|
    SeriesEnv menv{-1, std::nullopt, true, false};
    ScalarSeries sm = eval_series(e, menv);
    nenv.n = cd(-r);
    CHECK(std::abs(sm.eval(r) - eval_numeric(e, nenv)) < 1e-10);
}

TEST_CASE("series evaluation rejects disallowed variables") {
    SeriesEnv env{+1, std::nullopt, true, false};  // xi not allowed
    CHECK_THROWS(eval_series(parse_expression("1+xi"), env));
}
