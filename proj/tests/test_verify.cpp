#include <fstream>
#include <sstream>

#include "catch_amalgamated.hpp"

#include "qtail/builtin_suites.hpp"
#include "qtail/json_io.hpp"
#include "qtail/registry.hpp"
#include "qtail/verify.hpp"

using namespace qtail;

namespace {

std::string read(const std::string &name)
{
    std::ifstream in(std::string(QTAIL_TEST_DATA) + "/" + name);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string one_case(const std::string &c) { return R"({"suite": "t", "cases": [)" + c + "]}"; }

} // namespace

TEST_CASE("series JSON")
{
    const QSeries s = poch_inf(1, 6);
    const json j = to_json(s);
    CHECK(j.dump() == R"({"variable":"q","shift":0,"order":7,"coefficients":[[1,1],[-1,1],[-1,1],[0,1],[0,1],[1,1],[0,1]]})");
    CHECK(qseries_from_json(j) == s);

    std::vector<mpq_class> v = {mpq_class(1, 3), mpq_class("123456789012345678901234567890")};
    const QSeries big(-2, v, 1);
    const json jb = to_json(big);
    CHECK(jb["quarter_shift"] == 1);
    CHECK(jb["coefficients"][1][0] == "123456789012345678901234567890");
    CHECK(qseries_from_json(jb).coeffs() == big.coeffs());
    CHECK_THROWS_AS(qseries_from_json(json::parse(R"({"coefficients": [[1, 0]]})")), parse_error);
    CHECK_THROWS_AS(qseries_from_json(json::parse(R"({"order": 3, "coefficients": [1]})")), parse_error);
}

TEST_CASE("Laurent JSON")
{
    CHECK(to_json(delta_n(1)).dump() == R"({"variable":"v","terms":[[-2,-1,1],[2,-1,1]]})");
    const json r = to_json(VRational(1).div_qint(2));
    CHECK(r.contains("denominator_qints"));
    CHECK(to_json(VRational(quantum_int(4)).div_qint(2))["terms"].size() == 2);
}

TEST_CASE("registry parameters")
{
    CHECK(named_series("poch_inf", {}, 5) == poch_inf(1, 5));
    CHECK(named_series("theta_f", {{"k", 2}}, 14) == theta_f(2, 14));
    CHECK(named_series("graph_G_m", {{"m", 1}}, 10) == graph_family_tail("G_m", {{"m", 1}}, 10));
    CHECK_THROWS_AS(named_series("theta_f", {}, 5), domain_error);
    CHECK_THROWS_AS(named_series("theta_f", {{"k", 2}, {"j", 1}}, 5), domain_error);
    CHECK_THROWS_AS(named_series("nosuch", {}, 5), domain_error);
    CHECK(named_series("tail_85", {{"k_bound", 5}}, 20) == tail_85(20));
    const auto g = named_generator("poch", {{"c", 2}});
    CHECK(g.eval(3, 6) == poch_series(2, 3, 5));
    CHECK(g.params.at("c") == 2);
}

TEST_CASE("suite parsing rejects bad suites")
{
    CHECK_THROWS_AS(parse_suite("{"), parse_error);
    CHECK_THROWS_AS(parse_suite(R"({"suite": "x"})"), parse_error);
    CHECK_THROWS_AS(parse_suite(read("malformed.json")), parse_error);
    const std::string ok = R"({"id": "a", "kind": "oracle", "check": "nested_hook", "params": {"n": 1}})";
    CHECK_NOTHROW(parse_suite(one_case(ok)));
    CHECK_THROWS_AS(parse_suite(one_case(ok + "," + ok)), parse_error);
    CHECK_THROWS_AS(parse_suite(one_case(R"({"id": "a", "kind": "magic"})")), parse_error);
    CHECK_THROWS_AS(parse_suite(one_case(R"({"id": "a", "kind": "oracle", "check": "nested_hook"})")), parse_error);
    CHECK_THROWS_AS(parse_suite(one_case(R"({"id": "a", "kind": "oracle", "check": "nope", "params": {}})")), parse_error);
    // generators need a range of n
    CHECK_THROWS_AS(parse_suite(one_case(
                        R"({"id": "a", "kind": "identity", "lhs": {"generator": "nested_hook"}, "rhs": {"series": "lambda"}, "order": 4})")),
                    parse_error);
    CHECK_THROWS_AS(parse_suite(one_case(R"({"id": "a", "kind": "stabilization", "generator": {"series": "lambda"},
                                            "n_max": 3, "tail": {"series": "lambda"}})")),
                    parse_error);
    CHECK_THROWS_AS(parse_suite(one_case(R"({"id": "a", "kind": "identity", "lhs": {"series": "lambda"},
                                            "rhs": {"series": "lambda"}, "range": [3, 1], "expected": "tail-prefix"})")),
                    parse_error);
}

TEST_CASE("negative control names the first mismatching exponent")
{
    const Suite s = parse_suite(read("negative-control.json"));
    const SuiteResult r = run_suite(s);
    REQUIRE(r.cases.size() == 2);
    CHECK(r.cases[0].id == "theta-f2-correct");
    CHECK(r.cases[0].status == "pass");
    CHECK(r.cases[1].status == "fail");
    CHECK(r.cases[1].detail == "first mismatch at q^7: lhs 1, rhs 2");
    CHECK(r.exit_code() == 1);
}

TEST_CASE("case kinds")
{
    auto run1 = [](const std::string &c, RunOptions opt = {}) { return run_suite(parse_suite(one_case(c)), opt); };

    auto r = run1(R"({"id": "p", "kind": "identity", "lhs": {"generator": "nested_hook"},
                      "rhs": {"generator": "poch"}, "range": [1, 8], "expected": "tail-prefix"})");
    CHECK(r.cases[0].status == "pass");
    // (q^2;q)_n is not the tail of the nested hook coefficients.
    r = run1(R"({"id": "p", "kind": "identity", "lhs": {"generator": "nested_hook"},
                 "rhs": {"generator": "poch", "params": {"c": 2}}, "range": [1, 8], "expected": "tail-prefix"})");
    CHECK(r.cases[0].status == "fail");
    CHECK(r.cases[0].detail.rfind("n=2: first mismatch at q^1", 0) == 0);

    r = run1(R"({"id": "s", "kind": "stabilization", "generator": {"generator": "torus", "params": {"f": 5}},
                 "n_max": 6, "tail": {"series": "theta_f", "params": {"k": 2}}})");
    CHECK(r.cases[0].status == "pass");
    REQUIRE(r.cases[0].report);
    CHECK((*r.cases[0].report)["generator"] == "torus");
    CHECK((*r.cases[0].report)["verdicts"].size() == 6);
    r = run1(R"({"id": "s", "kind": "stabilization", "generator": {"generator": "torus", "params": {"f": 5}},
                 "n_max": 6, "tail": {"series": "theta_f", "params": {"k": 3}}})");
    CHECK(r.cases[0].status == "fail");
    CHECK(r.cases[0].detail == "tail: first mismatch at q^4: lhs -1, rhs 0");

    r = run1(R"({"id": "u", "kind": "identity", "lhs": {"series": "tail_85"}, "order": 20, "expected": "integral-unit"})");
    CHECK(r.cases[0].status == "pass");
    r = run1(R"({"id": "u", "kind": "identity", "lhs": {"series": "poch_inf", "params": {"c": 2}, "power": -1},
                 "order": 6, "expected": "integral-unit"})");
    CHECK(r.cases[0].status == "pass");

    r = run1(R"({"id": "o", "kind": "oracle", "check": "bubble", "params": {"m": 1, "n": 2, "k": 2, "l": 1, "a": 1}})");
    CHECK(r.cases[0].status == "pass");

    // Evaluation problems are errors, not failures.
    r = run1(R"({"id": "e", "kind": "oracle", "check": "tet_2n", "params": {"n": 5}})");
    CHECK(r.cases[0].status == "error");
    CHECK(r.exit_code() == 2);

    // The override stops short of the wrong coefficient at q^4.
    const std::string wrong_at_4 = R"({"id": "o", "kind": "identity", "lhs": {"series": "theta_f", "params": {"k": 2}},
                                       "rhs": {"literal": {"coefficients": [1, -1, 0, 0, 7]}}, "order": 4})";
    CHECK(run1(wrong_at_4).cases[0].status == "fail");
    CHECK(run1(wrong_at_4, {1, false, 3}).cases[0].status == "pass");
}

TEST_CASE("slow cases are skipped unless requested")
{
    const std::string c = R"({"id": "t", "kind": "oracle", "check": "theta_2n", "params": {"n": 1}, "tags": ["slow"]})";
    const Suite s = parse_suite(one_case(c));
    CHECK(run_suite(s).skipped == 1);
    CHECK(run_suite(s).cases.empty());
    CHECK(run_suite(s, {1, true, std::nullopt}).cases.size() == 1);
}

TEST_CASE("reports do not depend on the number of jobs")
{
    const Suite s = parse_suite(builtin::suites().at("oracle-small"));
    const std::string a = run_suite(s, {1, false, std::nullopt}).to_json().dump();
    const std::string b = run_suite(s, {3, false, std::nullopt}).to_json().dump();
    CHECK(a == b);
}

TEST_CASE("builtin suites parse")
{
    for (auto &[name, text] : builtin::suites()) {
        INFO(name);
        const Suite s = parse_suite(text);
        CHECK(s.name == name);
        CHECK_FALSE(s.cases.empty());
    }
}
