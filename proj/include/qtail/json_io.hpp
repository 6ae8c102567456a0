#pragma once

// JSON forms of series, Laurent polynomials and stabilization reports.

#include <limits>
#include <string>

#include <nlohmann/json.hpp>

#include "qtail/errors.hpp"
#include "qtail/qrational.hpp"
#include "qtail/qseries.hpp"
#include "qtail/tails.hpp"

namespace qtail {

using json = nlohmann::ordered_json;

namespace detail {

// Integers that fit in int64 are written as numbers, others as decimal strings.
inline json integer_json(const mpz_class &z)
{
    if (z.fits_slong_p() && sizeof(long) >= 8) return z.get_si();
    return z.get_str();
}

inline mpz_class integer_from_json(const json &j)
{
    if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
    if (j.is_string()) {
        mpz_class z;
        if (z.set_str(j.get<std::string>(), 10) != 0) throw parse_error("not an integer: " + j.dump());
        return z;
    }
    throw parse_error("expected an integer, got " + j.dump());
}

} // namespace detail

inline json rational_json(const mpq_class &c) { return json::array({detail::integer_json(c.get_num()), detail::integer_json(c.get_den())}); }

// [num, den], or a bare integer.
inline mpq_class rational_from_json(const json &j)
{
    if (j.is_array()) {
        if (j.size() != 2) throw parse_error("rational must be [numerator, denominator]");
        const mpz_class d = detail::integer_from_json(j[1]);
        if (d == 0) throw parse_error("zero denominator");
        mpq_class q(detail::integer_from_json(j[0]), d);
        q.canonicalize();
        return q;
    }
    return mpq_class(detail::integer_from_json(j));
}

inline json to_json(const QSeries &s)
{
    json j;
    j["variable"] = "q";
    j["shift"] = s.shift();
    if (s.quarter()) j["quarter_shift"] = s.quarter();
    j["order"] = s.order();
    json c = json::array();
    for (const auto &x : s.coeffs()) c.push_back(rational_json(x));
    j["coefficients"] = std::move(c);
    return j;
}

inline QSeries qseries_from_json(const json &j)
{
    if (!j.is_object() || !j.contains("coefficients")) throw parse_error("series object needs \"coefficients\"");
    if (j.contains("variable") && j["variable"] != "q") throw parse_error("series variable must be \"q\"");
    std::vector<mpq_class> v;
    for (const auto &c : j["coefficients"]) v.push_back(rational_from_json(c));
    if (j.contains("order") && j["order"].get<int>() != static_cast<int>(v.size()))
        throw parse_error("series \"order\" does not match the number of coefficients");
    return QSeries(j.value("shift", 0), std::move(v), j.value("quarter_shift", 0));
}

inline json to_json(const VLaurent &p)
{
    json t = json::array();
    for (const auto &[e, c] : p.terms())
        t.push_back(json::array({e, detail::integer_json(c.get_num()), detail::integer_json(c.get_den())}));
    return {{"variable", "v"}, {"terms", std::move(t)}};
}

inline json to_json(const VRational &r)
{
    if (auto p = r.as_laurent()) return to_json(*p);
    json d = json::array();
    for (const auto &[j, e] : r.denominator().exponents()) d.push_back(json::array({j, e}));
    return {{"variable", "v"}, {"numerator", to_json(r.numerator())["terms"]}, {"denominator_qints", std::move(d)}};
}

inline json to_json(const StabilizationReport &r)
{
    json p = json::object();
    for (auto &[k, v] : r.params) p[k] = v;
    json v = json::array();
    for (bool b : r.verdicts) v.push_back(b);
    return {{"generator", r.generator}, {"params", std::move(p)}, {"n_max", r.n_max}, {"verdicts", std::move(v)},
            {"tail", to_json(r.tail)}};
}

} // namespace qtail
