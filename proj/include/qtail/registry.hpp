#pragma once

// Named series and n-indexed series families, looked up by the command line
// front end and the suite runner.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qtail/errors.hpp"
#include "qtail/identities.hpp"
#include "qtail/skein.hpp"
#include "qtail/tails.hpp"

namespace qtail {

using Params = std::map<std::string, int>;

struct ParamSpec {
    std::string name;
    std::optional<int> fallback; // absent: required unless `optional`
    bool optional = false;       // may stay absent
    std::string help;
};

// Fills defaults and rejects unknown or missing parameters.
inline Params resolve_params(const std::string &owner, const std::vector<ParamSpec> &specs, const Params &given)
{
    Params out;
    for (auto &[k, v] : given) {
        bool known = false;
        for (auto &s : specs) known = known || s.name == k;
        if (!known) throw domain_error(owner + ": unknown parameter '" + k + "'");
        out[k] = v;
    }
    for (auto &s : specs) {
        if (out.count(s.name)) continue;
        if (s.fallback) out[s.name] = *s.fallback;
        else if (!s.optional) throw domain_error(owner + ": missing parameter '" + s.name + "'");
    }
    return out;
}

// A fixed series, expanded through q^N.
struct SeriesEntry {
    std::string help;
    std::vector<ParamSpec> params;
    std::function<QSeries(const Params &, int N)> eval;
};

// A family P_n; eval returns at least `order` coefficients from the lowest term.
struct GeneratorEntry {
    std::string help;
    std::vector<ParamSpec> params;
    std::function<QSeries(const Params &, int n, int order)> eval;
};

namespace detail {

inline int get(const Params &p, const std::string &k) { return p.at(k); }

inline MonomialArg monomial_arg(const Params &p, const std::string &x)
{
    return MonomialArg::make(get(p, x + "_sign"), get(p, x), get(p, x + "_den"));
}

inline std::vector<ParamSpec> theta_params()
{
    return {{"a", {}, false, "exponent numerator of a"},
            {"a_den", 1, false, "exponent denominator of a (1 or 2)"},
            {"a_sign", 1, false, "sign of a"},
            {"b", {}, false, "exponent numerator of b"},
            {"b_den", 1, false, "exponent denominator of b (1 or 2)"},
            {"b_sign", 1, false, "sign of b"}};
}

inline QSeries rational_series(const VRational &r, int order) { return to_q_series(r, order - 1); }

} // namespace detail

inline const std::map<std::string, SeriesEntry> &series_registry()
{
    using detail::get;
    static const std::map<std::string, SeriesEntry> r = [] {
        std::map<std::string, SeriesEntry> m;
        m["poch_inf"] = {"(q^c; q^step)_inf",
                         {{"c", 1, false, ""}, {"step", 1, false, ""}},
                         [](const Params &p, int N) { return poch_inf(get(p, "c"), N, get(p, "step")); }};
        m["poch"] = {"(q^c; q)_n", {{"c", 1, false, ""}, {"n", {}, false, ""}},
                     [](const Params &p, int N) { return poch_series(get(p, "c"), get(p, "n"), N); }};
        m["theta_f"] = {"f(-q^(2k), -q)", {{"k", {}, false, ""}},
                        [](const Params &p, int N) { return theta_f(get(p, "k"), N); }};
        m["false_theta"] = {"Psi(q^(2k-1), q)", {{"k", {}, false, ""}},
                            [](const Params &p, int N) { return false_theta(get(p, "k"), N); }};
        m["ag_rhs"] = {"Andrews-Gordon multi-sum times (q;q)_inf", {{"k", {}, false, ""}},
                       [](const Params &p, int N) { return ag_rhs(get(p, "k"), N); }};
        m["false_ag_rhs"] = {"false-theta multi-sum times (q;q)_inf", {{"k", {}, false, ""}},
                             [](const Params &p, int N) { return false_ag_rhs(get(p, "k"), N); }};
        m["lambda"] = {"Lambda(q)", {}, [](const Params &, int N) { return lambda_series(N); }};
        m["tail_85"] = {"tail of the knot 8_5", {{"k_bound", {}, true, "largest k summed"}},
                        [](const Params &p, int N) {
                            auto it = p.find("k_bound");
                            return tail_85(N, it == p.end() ? std::nullopt : std::optional<int>(it->second));
                        }};
        m["theta_general"] = {"f(a, b) with a = a_sign q^(a/a_den), b likewise", detail::theta_params(),
                              [](const Params &p, int N) {
                                  return theta_general(detail::monomial_arg(p, "a"), detail::monomial_arg(p, "b"), N);
                              }};
        m["psi_general"] = {"Psi(a, b) with a = a_sign q^(a/a_den), b likewise", detail::theta_params(),
                            [](const Params &p, int N) {
                                return psi_general(detail::monomial_arg(p, "a"), detail::monomial_arg(p, "b"), N);
                            }};
        m["chain_tail"] = {"tail of a chain of 2k (odd=0) or 2k+1 (odd=1) bubbles",
                           {{"odd", 0, false, ""}, {"k", {}, false, ""}}, [](const Params &p, int N) {
                               return chain_tail(get(p, "odd") ? Parity::odd : Parity::even, get(p, "k"), N);
                           }};
        const std::map<std::string, std::vector<ParamSpec>> family_params = {
            {"theta", {}},
            {"tet_2n", {}},
            {"G_m", {{"m", {}, false, ""}}},
            {"G_kl", {{"k", {}, false, ""}, {"l", {}, false, ""}, {"minus", 0, false, "use f(-q^(2l+2), -q)"}}},
            {"inadequate_chain", {{"m", {}, false, ""}}},
            {"chain", {{"odd", 0, false, ""}, {"k", {}, false, ""}}}};
        for (const auto &fam : graph_families())
            m["graph_" + fam] = {"stated tail of the graph family " + fam, family_params.at(fam),
                                 [fam](const Params &p, int N) { return graph_family_tail(fam, p, N); }};
        return m;
    }();
    return r;
}

inline const std::map<std::string, GeneratorEntry> &generator_registry()
{
    using detail::get;
    using detail::rational_series;
    static const std::map<std::string, GeneratorEntry> r = [] {
        std::map<std::string, GeneratorEntry> m;
        m["torus"] = {"colored Jones polynomial of the (2, f) torus knot", {{"f", {}, false, ""}},
                      [](const Params &p, int n, int order) {
                          return to_q_series(colored_jones_torus(get(p, "f"), n), order - 1);
                      }};
        m["poch"] = {"(q^c; q)_n", {{"c", 1, false, ""}},
                     [](const Params &p, int n, int order) { return poch_series(get(p, "c"), n, order - 1); }};
        m["nested_hook"] = {"[n]!^2 / [2n]!", {}, [](const Params &, int n, int order) {
                             return rational_series(VRational(quantum_fact(n).pow(2), detail::fact_den(2 * n)), order);
                         }};
        m["bubble_nnnn0"] = {"bubble coefficient with all colors n at index 0", {},
                             [](const Params &, int n, int order) {
                                 return rational_series(bubble_coeff(n, n, n, n, 0), order);
                             }};
        m["p_sum"] = {"sum_i P(n, i)", {}, [](const Params &, int n, int order) {
                          VRational s;
                          for (int i = 0; i <= n; ++i) s += p_coeff(n, i);
                          return rational_series(s, order);
                      }};
        m["p_nn_sum"] = {"sum_i P(n, i) times the (n, i) bubble coefficient at index 0", {},
                         [](const Params &, int n, int order) {
                             VRational s;
                             for (int i = 0; i <= n; ++i) s += p_coeff(n, i) * nn_i_coeff(n, i, 0);
                             return rational_series(s, order);
                         }};
        m["theta_2n"] = {"Theta(2n, 2n, 2n)", {},
                         [](const Params &, int n, int order) { return rational_series(theta_2n(n), order); }};
        m["tet_2n"] = {"tetrahedron with all colors 2n", {},
                       [](const Params &, int n, int order) { return rational_series(tet_2n(n), order); }};
        m["tet_over_theta"] = {"tetrahedron over Theta, colors 2n", {}, [](const Params &, int n, int order) {
                                   return rational_series(tet_2n(n), order) / rational_series(theta_2n(n), order);
                               }};
        return m;
    }();
    return r;
}

template <class Entry>
const Entry &registry_lookup(const std::map<std::string, Entry> &reg, const std::string &kind, const std::string &name)
{
    auto it = reg.find(name);
    if (it == reg.end()) throw domain_error("unknown " + kind + " '" + name + "'");
    return it->second;
}

inline QSeries named_series(const std::string &name, const Params &params, int N)
{
    const auto &e = registry_lookup(series_registry(), "series", name);
    return e.eval(resolve_params(name, e.params, params), N);
}

inline SeriesGenerator named_generator(const std::string &name, const Params &params)
{
    const auto &e = registry_lookup(generator_registry(), "generator", name);
    Params p = resolve_params(name, e.params, params);
    return {name, p, [eval = e.eval, p](int n, int order) { return eval(p, n, order); }};
}

} // namespace qtail
