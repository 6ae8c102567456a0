#pragma once

// Verification suites: parsing, the oracle-versus-formula checks, and a
// runner that evaluates cases concurrently and reports them sorted by id.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qtail/errors.hpp"
#include "qtail/jones_wenzl.hpp"
#include "qtail/json_io.hpp"
#include "qtail/network.hpp"
#include "qtail/parallel.hpp"
#include "qtail/registry.hpp"

namespace qtail {

struct VerificationCase {
    std::string id;
    std::string kind; // identity | oracle | stabilization
    std::vector<std::string> tags;
    json spec;

    bool slow() const { return std::find(tags.begin(), tags.end(), "slow") != tags.end(); }
};

struct Suite {
    std::string name;
    std::vector<VerificationCase> cases;
};

struct CaseResult {
    std::string id;
    std::string status; // pass | fail | error
    std::string detail;
    std::optional<json> report;
};

struct SuiteResult {
    std::string suite;
    std::vector<CaseResult> cases;
    int skipped = 0;

    int count(const std::string &status) const
    {
        return static_cast<int>(std::count_if(cases.begin(), cases.end(), [&](auto &c) { return c.status == status; }));
    }

    // 0 all pass, 1 some case failed, 2 some case could not be evaluated.
    int exit_code() const { return count("error") ? 2 : count("fail") ? 1 : 0; }

    json to_json() const
    {
        json cs = json::array();
        for (auto &c : cases) {
            json j = {{"id", c.id}, {"status", c.status}, {"detail", c.detail}};
            if (c.report) j["report"] = *c.report;
            cs.push_back(std::move(j));
        }
        return {{"suite", suite},
                {"cases", std::move(cs)},
                {"summary", {{"pass", count("pass")}, {"fail", count("fail")}, {"error", count("error")}, {"skipped", skipped}}}};
    }
};

struct RunOptions {
    int jobs = 1;
    bool slow = false;
    std::optional<int> order; // replaces the order of equality cases
};

// ---- oracle checks: closed formula against the skein-theoretic bracket ----

struct OracleCheck {
    std::vector<ParamSpec> params;
    // Empty on success, otherwise a description of the mismatch.
    std::function<std::string(const Params &)> run;
};

namespace detail {

inline std::string short_string(const std::string &s, std::size_t limit = 160)
{
    return s.size() <= limit ? s : s.substr(0, limit) + "...";
}

inline std::string rational_mismatch(const VRational &formula, const VRational &bracket)
{
    if (formula == bracket) return {};
    return "formula " + short_string(formula.to_string()) + " != bracket " + short_string(bracket.to_string());
}

inline std::vector<ParamSpec> required(std::initializer_list<const char *> names)
{
    std::vector<ParamSpec> r;
    for (auto n : names) r.push_back({n, {}, false, ""});
    return r;
}

// Both sides as normalized series over their whole span.
inline std::string normalized_mismatch(const VLaurent &a, const VLaurent &b)
{
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero() ? "" : "one side is zero";
    const int span = std::max(a.max_exponent() - a.min_exponent(), b.max_exponent() - b.min_exponent()) / 4 + 1;
    const QSeries x = normalize(a, span), y = normalize(b, span);
    if (x.quarter() != y.quarter()) return "fractional q-shifts differ";
    if (auto k = QSeries::first_difference(x, y, span + 1))
        return "normalized series differ at q^" + std::to_string(*k);
    return {};
}

} // namespace detail

inline const std::map<std::string, OracleCheck> &oracle_checks()
{
    using detail::get;
    static const std::map<std::string, OracleCheck> r = [] {
        std::map<std::string, OracleCheck> m;
        m["bubble"] = {detail::required({"m", "n", "k", "l", "a"}), [](const Params &p) {
                           const BubbleParams b{get(p, "m"), get(p, "n"), get(p, "k"), get(p, "l")};
                           const int a = get(p, "a");
                           VRational rhs;
                           for (int i = 0; i <= std::min({b.m, b.n, b.l}); ++i)
                               rhs += bubble_coeff(b.m, b.n, b.k, b.l, i) * bracket_closed(bubble_term_closure(b, i, a));
                           return detail::rational_mismatch(rhs, bracket_closed(bubble_closure(b, a)));
                       }};
        m["theta_2n"] = {detail::required({"n"}), [](const Params &p) {
                             const int n = get(p, "n");
                             return detail::rational_mismatch(theta_2n(n), bracket_closed(theta_network(2 * n, 2 * n, 2 * n)));
                         }};
        m["tet_2n"] = {detail::required({"n"}), [](const Params &p) {
                           const int c = 2 * get(p, "n");
                           return detail::rational_mismatch(tet_2n(get(p, "n")), bracket_closed(tetrahedron_network({c, c, c, c, c, c})));
                       }};
        m["torus"] = {detail::required({"f", "n"}), [](const Params &p) {
                          const int f = get(p, "f"), n = get(p, "n");
                          const VRational b = bracket_closed(torus_2f_network(f, n)) / VRational(delta_n(n));
                          auto bl = b.as_laurent();
                          if (!bl) return std::string("bracket divided by Delta_n is not a Laurent polynomial");
                          return detail::normalized_mismatch(colored_jones_torus(f, n), *bl);
                      }};
        m["jw_laws"] = {detail::required({"n"}), [](const Params &p) {
                            const int n = get(p, "n");
                            const TLElement &f = jones_wenzl(n);
                            if (!(f * f == f)) return std::string("not idempotent");
                            for (int i = 1; i < n; ++i) {
                                const auto e = TLElement::basis(Matching::cup_cap(n, i));
                                if (!(e * f).is_zero() || !(f * e).is_zero())
                                    return "not annihilated by e_" + std::to_string(i);
                            }
                            return detail::rational_mismatch(VRational(delta_n(n)), f.trace());
                        }};
        m["jw_partial_trace"] = {detail::required({"m", "n"}), [](const Params &p) {
                                     const int mm = get(p, "m"), n = get(p, "n");
                                     const TLElement lhs = jones_wenzl(mm + n).partial_trace(mm);
                                     const TLElement rhs =
                                         jones_wenzl(n).scaled(VRational(delta_n(mm + n)) / VRational(delta_n(n)));
                                     return lhs == rhs ? std::string() : std::string("partial closure differs");
                                 }};
        m["nested_hook"] = {detail::required({"n"}), [](const Params &p) {
                             const int n = get(p, "n");
                             return detail::rational_mismatch(VRational(quantum_fact(n).pow(2), detail::fact_den(2 * n)),
                                                              coeff_of(jones_wenzl(2 * n), Matching::nested_turnback(n)));
                         }};
        return m;
    }();
    return r;
}

// ---- suite parsing ----

namespace detail {

inline Params params_from_json(const json &j)
{
    Params p;
    if (j.is_null()) return p;
    if (!j.is_object()) throw parse_error("\"params\" must be an object");
    for (auto &[k, v] : j.items()) {
        if (!v.is_number_integer()) throw parse_error("parameter '" + k + "' must be an integer");
        p[k] = v.get<int>();
    }
    return p;
}

inline const json &field(const json &j, const std::string &key)
{
    if (!j.contains(key)) throw parse_error("missing field \"" + key + "\"");
    return j[key];
}

// Checks a term and reports whether it depends on n.
inline bool check_term(const json &t)
{
    if (!t.is_object()) throw parse_error("term must be an object");
    if (t.contains("series")) {
        const std::string name = t["series"].get<std::string>();
        auto &e = registry_lookup(series_registry(), "series", name);
        resolve_params(name, e.params, params_from_json(t.value("params", json())));
        return false;
    }
    if (t.contains("generator")) {
        const std::string name = t["generator"].get<std::string>();
        auto &e = registry_lookup(generator_registry(), "generator", name);
        resolve_params(name, e.params, params_from_json(t.value("params", json())));
        return true;
    }
    if (t.contains("literal")) {
        qseries_from_json(t["literal"]);
        return false;
    }
    for (const char *op : {"product", "quotient", "tail_product_1", "tail_product_23"}) {
        if (!t.contains(op)) continue;
        const json &args = t[op];
        if (!args.is_array() || args.empty()) throw parse_error(std::string("\"") + op + "\" needs a list of terms");
        if (std::string(op) != "product" && args.size() != 2) throw parse_error(std::string("\"") + op + "\" takes two terms");
        bool dep = false;
        for (auto &a : args) dep = check_term(a) || dep;
        return dep;
    }
    throw parse_error("unrecognized term " + short_string(t.dump()));
}

// Expands a term with at least `order` coefficients; n is used by generators.
inline QSeries eval_term(const json &t, int n, int order)
{
    QSeries r;
    if (t.contains("series")) {
        r = named_series(t["series"].get<std::string>(), params_from_json(t.value("params", json())), order - 1);
    } else if (t.contains("generator")) {
        r = named_generator(t["generator"].get<std::string>(), params_from_json(t.value("params", json()))).eval(n, order);
    } else if (t.contains("literal")) {
        r = qseries_from_json(t["literal"]);
    } else if (t.contains("product")) {
        r = QSeries::one(order - 1);
        for (auto &a : t["product"]) r *= eval_term(a, n, order);
    } else if (t.contains("quotient")) {
        r = eval_term(t["quotient"][0], n, order) / eval_term(t["quotient"][1], n, order);
    } else if (t.contains("tail_product_1")) {
        r = tail_product_1(eval_term(t["tail_product_1"][0], n, order), eval_term(t["tail_product_1"][1], n, order), order - 1);
    } else {
        r = tail_product_23(eval_term(t["tail_product_23"][0], n, order), eval_term(t["tail_product_23"][1], n, order),
                            order - 1);
    }
    if (t.contains("power")) {
        const int e = t["power"].get<int>();
        r = e >= 0 ? r.pow(static_cast<unsigned>(e)) : QSeries::one(order - 1) / r.pow(static_cast<unsigned>(-e));
    }
    return r;
}

inline std::pair<int, int> range_of(const json &c)
{
    const json &r = field(c, "range");
    if (!r.is_array() || r.size() != 2) throw parse_error("\"range\" must be [first, last]");
    const int lo = r[0].get<int>(), hi = r[1].get<int>();
    if (lo < 1 || hi < lo) throw parse_error("\"range\" must satisfy 1 <= first <= last");
    return {lo, hi};
}

inline void check_case(const VerificationCase &c)
{
    const json &s = c.spec;
    if (c.kind == "identity") {
        const std::string expected = s.value("expected", "equality");
        const bool lhs_n = check_term(field(s, "lhs"));
        if (expected == "equality" || expected == "integral-unit") {
            if (field(s, "order").get<int>() < 0) throw parse_error("negative order");
            if (lhs_n) throw parse_error("generator terms need \"expected\": \"tail-prefix\"");
            if (expected == "equality" && check_term(field(s, "rhs")))
                throw parse_error("generator terms need \"expected\": \"tail-prefix\"");
        } else if (expected == "tail-prefix") {
            check_term(field(s, "rhs"));
            range_of(s);
        } else {
            throw parse_error("unknown expectation '" + expected + "'");
        }
    } else if (c.kind == "oracle") {
        const std::string name = field(s, "check").get<std::string>();
        auto it = oracle_checks().find(name);
        if (it == oracle_checks().end()) throw parse_error("unknown oracle check '" + name + "'");
        resolve_params(name, it->second.params, params_from_json(s.value("params", json())));
    } else if (c.kind == "stabilization") {
        if (!check_term(field(s, "generator"))) throw parse_error("stabilization needs a generator term");
        if (check_term(field(s, "tail"))) throw parse_error("the expected tail cannot depend on n");
        if (field(s, "n_max").get<int>() < 1) throw parse_error("\"n_max\" must be at least 1");
    } else {
        throw parse_error("unknown case kind '" + c.kind + "'");
    }
}

} // namespace detail

// Parses and validates a suite; every problem is a parse_error.
inline Suite parse_suite(const std::string &text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception &e) {
        throw parse_error(std::string("suite is not valid JSON: ") + e.what());
    }
    Suite s;
    try {
        s.name = j.value("suite", "unnamed");
        std::set<std::string> ids;
        for (const auto &c : detail::field(j, "cases")) {
            VerificationCase vc;
            vc.id = detail::field(c, "id").get<std::string>();
            if (!ids.insert(vc.id).second) throw parse_error("duplicate case id '" + vc.id + "'");
            vc.kind = detail::field(c, "kind").get<std::string>();
            if (c.contains("tags")) vc.tags = c["tags"].get<std::vector<std::string>>();
            vc.spec = c;
            try {
                detail::check_case(vc);
            } catch (const parse_error &) {
                throw;
            } catch (const std::exception &e) {
                throw parse_error(e.what());
            }
            s.cases.push_back(std::move(vc));
        }
    } catch (const json::exception &e) {
        throw parse_error(std::string("malformed suite: ") + e.what());
    } catch (const parse_error &e) {
        throw parse_error(std::string(e.what()));
    }
    return s;
}

// ---- running ----

namespace detail {

inline std::string coefficient_mismatch(const QSeries &a, const QSeries &b, int end)
{
    if (auto k = QSeries::first_difference(a, b, end))
        return "first mismatch at q^" + std::to_string(*k) + ": lhs " + a.coeff(*k).get_str() + ", rhs " + b.coeff(*k).get_str();
    return {};
}

inline CaseResult run_identity(const VerificationCase &c, const RunOptions &opt)
{
    const json &s = c.spec;
    const std::string expected = s.value("expected", "equality");
    CaseResult r{c.id, "pass", "", std::nullopt};
    if (expected == "tail-prefix") {
        auto [lo, hi] = range_of(s);
        std::vector<std::string> mismatch(static_cast<std::size_t>(hi - lo + 1));
        parallel_for(mismatch.size(), opt.jobs, [&](std::size_t i) {
            const int n = lo + static_cast<int>(i);
            const QSeries a = normalize(eval_term(s["lhs"], n, n + 1)), b = normalize(eval_term(s["rhs"], n, n + 1));
            mismatch[i] = coefficient_mismatch(a, b, n);
        });
        for (std::size_t i = 0; i < mismatch.size(); ++i)
            if (!mismatch[i].empty()) {
                r.status = "fail";
                r.detail = "n=" + std::to_string(lo + static_cast<int>(i)) + ": " + mismatch[i] + " (after normalization)";
                return r;
            }
        r.detail = "agrees on n coefficients for n=" + std::to_string(lo) + ".." + std::to_string(hi);
        return r;
    }
    const int N = opt.order.value_or(s["order"].get<int>());
    const QSeries a = eval_term(s["lhs"], 0, N + 1);
    if (expected == "integral-unit") {
        if (a.shift() != 0 || a.coeff(0) != 1) {
            r.status = "fail";
            r.detail = "does not start with 1 at q^0";
            return r;
        }
        for (int k = 0; k <= N; ++k)
            if (a.coeff(k).get_den() != 1) {
                r.status = "fail";
                r.detail = "non-integer coefficient at q^" + std::to_string(k);
                return r;
            }
        r.detail = "integer coefficients through q^" + std::to_string(N);
        return r;
    }
    const QSeries b = eval_term(s["rhs"], 0, N + 1);
    if (auto d = coefficient_mismatch(a, b, N + 1); !d.empty()) {
        r.status = "fail";
        r.detail = d;
    } else {
        r.detail = "equal through q^" + std::to_string(N);
    }
    return r;
}

inline CaseResult run_oracle(const VerificationCase &c)
{
    const std::string name = c.spec["check"].get<std::string>();
    const OracleCheck &chk = oracle_checks().at(name);
    const std::string d = chk.run(resolve_params(name, chk.params, params_from_json(c.spec.value("params", json()))));
    if (d.empty()) return {c.id, "pass", "formula equals bracket", std::nullopt};
    return {c.id, "fail", d, std::nullopt};
}

inline CaseResult run_stabilization(const VerificationCase &c)
{
    const json &s = c.spec;
    const int n_max = s["n_max"].get<int>();
    const json &gt = s["generator"];
    SeriesGenerator g{gt.value("generator", std::string("composite")), params_from_json(gt.value("params", json())),
                      [&gt](int n, int order) { return eval_term(gt, n, order); }};
    const StabilizationReport rep = stabilization_report(g, n_max, s.value("strong", false));
    CaseResult r{c.id, "pass", "", to_json(rep)};
    for (int n = 1; n <= n_max; ++n)
        if (!rep.verdicts[static_cast<std::size_t>(n - 1)]) {
            r.status = "fail";
            r.detail = "P_" + std::to_string(n) + " and P_" + std::to_string(n + 1) + " disagree";
            return r;
        }
    const QSeries expect = normalize(eval_term(s["tail"], 0, n_max));
    if (auto d = coefficient_mismatch(rep.tail, expect, n_max); !d.empty()) {
        r.status = "fail";
        r.detail = "tail: " + d;
        return r;
    }
    r.detail = "stable through n=" + std::to_string(n_max) + ", tail matches";
    return r;
}

} // namespace detail

inline CaseResult run_case(const VerificationCase &c, const RunOptions &opt = {})
{
    try {
        if (c.kind == "identity") return detail::run_identity(c, opt);
        if (c.kind == "oracle") return detail::run_oracle(c);
        return detail::run_stabilization(c);
    } catch (const std::exception &e) {
        return {c.id, "error", e.what(), std::nullopt};
    }
}

inline SuiteResult run_suite(const Suite &s, const RunOptions &opt = {})
{
    std::vector<const VerificationCase *> todo;
    SuiteResult out{s.name, {}, 0};
    for (auto &c : s.cases) {
        if (c.slow() && !opt.slow) ++out.skipped;
        else todo.push_back(&c);
    }
    out.cases.resize(todo.size());
    parallel_for(todo.size(), opt.jobs, [&](std::size_t i) { out.cases[i] = run_case(*todo[i], opt); });
    std::sort(out.cases.begin(), out.cases.end(), [](auto &a, auto &b) { return a.id < b.id; });
    return out;
}

} // namespace qtail
