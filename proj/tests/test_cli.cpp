#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "psido/json_io.hpp"
#include "psido/verify.hpp"

using namespace psido;

namespace {

// Run the CLI binary (built alongside the tests) and capture stdout.
int run_cli(const std::string& args, std::string& out) {
    std::string cmd = "./psido " + args + " > cli_test_out.txt 2>&1";
    int rc = std::system(cmd.c_str());
    std::ifstream f("cli_test_out.txt");
    std::stringstream ss;
    ss << f.rdbuf();
    out = ss.str();
    std::remove("cli_test_out.txt");
    return rc;
}

}  // namespace

TEST_CASE("residue verb prints the closed-form value") {
    std::string out;
    int rc = run_cli("residue --op \"(1+n^2)^-0.5\"", out);
    CHECK(rc == 0);
    CHECK(out.find("2.0000000") != std::string::npos);
}

TEST_CASE("trace verb respects --tol") {
    std::string out;
    // smoothing operator: trace = pi coth(pi), tiny error estimate
    CHECK(run_cli("trace --op \"(1+n^2)^-1\" --tol 1e-6", out) == 0);
    CHECK(out.find("3.15334") != std::string::npos);
    // shallow expansion of an x-dependent symbol: visible truncation error,
    // so an absurd tolerance must make the command fail
    int rc = run_cli("trace --op \"(2+sin(x))/(xi^2+xi+10)\" --depth 3 --tol 1e-30", out);
    CHECK(rc != 0);
}

TEST_CASE("logdet verb reports local and spectral values") {
    std::string out;
    CHECK(run_cli("logdet --op \"1+n^2\"", out) == 0);
    // log(4 sinh^2 pi) = 6.2794...
    CHECK(out.find("6.2794") != std::string::npos);
}

TEST_CASE("verify verb writes deterministic reports") {
    std::string out;
    CHECK(run_cli("verify residues --out .", out) == 0);
    CHECK(out.find("suite residues") != std::string::npos);
    CHECK(out.find("FAIL") == std::string::npos);

    std::ifstream csv("report.csv");
    REQUIRE(csv.good());
    std::string header;
    std::getline(csv, header);
    CHECK(header == "check_id,paper_ref,value,reference,tolerance,pass");

    std::ifstream js("report.json");
    REQUIRE(js.good());
    Json j = Json::parse(js);
    CHECK(j.contains("checks"));
    CHECK(j["checks"].size() > 0);
}

TEST_CASE("unknown expressions produce an error exit") {
    std::string out;
    CHECK(run_cli("residue --op \"bogus(\"", out) != 0);
}

TEST_CASE("run_suite is deterministic across thread counts") {
    VerifyOptions o1;
    o1.threads = 1;
    VerifyOptions o4;
    o4.threads = 4;
    auto r1 = run_suite("residues", o1);
    auto r4 = run_suite("residues", o4);
    REQUIRE(r1.size() == r4.size());
    for (size_t i = 0; i < r1.size(); ++i) {
        CHECK(r1[i].check_id == r4[i].check_id);
        CHECK(r1[i].value == r4[i].value);  // bitwise equal
    }
}

TEST_CASE("fmt17 round-trips doubles") {
    double v = 0.1 + 0.2;
    CHECK(std::stod(fmt17(v)) == v);
}

TEST_CASE("operator_from_json builds every kind") {
    Json p = Json::parse(R"js({"kind":"power_multiplier","base":"1+n^2","exponent":0.5})js");
    CHECK(operator_from_json(p).order == cd(1.0));
    Json s = Json::parse(R"js({"kind":"shifted_first_order","c":0.3})js");
    CHECK(operator_from_json(s).is_multiplier());
    Json m = Json::parse(
        R"js({"kind":"matrix_multiplier","entries":[["sqrt(1+n^2)","0"],["0","sqrt(1+n^2)"]]})js");
    CHECK(operator_from_json(m).dim == 2);
    Json v = Json::parse(
        R"js({"kind":"variable_symbol","entries":[["(2+sin(x))*(1+xi^2)^(-0.65)"]]})js");
    CHECK_FALSE(operator_from_json(v).is_multiplier());
    CHECK_THROWS(operator_from_json(Json::parse(R"js({"kind":"nonsense"})js")));
}
