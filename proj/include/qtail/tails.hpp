#pragma once

// Normalization up to sign and power of q, the agreement predicate, tail
// stabilization reports, and tail product rules for glued graphs.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qtail/errors.hpp"
#include "qtail/identities.hpp"
#include "qtail/parallel.hpp"
#include "qtail/qrational.hpp"
#include "qtail/qseries.hpp"
#include "qtail/skein.hpp"

namespace qtail {

// Divides by c * q^s, where c q^s is the lowest term, so the result starts
// with +1 at q^0. Any fractional q-shift is dropped with the power.
inline QSeries normalize(const QSeries &p)
{
    if (p.is_zero()) throw domain_error("normalize: zero series");
    const mpq_class lead = p.coeff(p.shift());
    std::vector<mpq_class> v(p.coeffs().begin(), p.coeffs().end());
    for (auto &x : v) x /= lead;
    return QSeries(0, std::move(v));
}

// Normalized expansion keeping N+1 coefficients.
inline QSeries normalize(const VLaurent &p, int N) { return normalize(to_q_series(p, N)); }
inline QSeries normalize(const VRational &p, int N) { return normalize(to_q_series(p, N)); }

// True iff the normalized series agree on q^0 .. q^(n-1).
inline bool agree_to_order(const QSeries &a, const QSeries &b, int n)
{
    const QSeries x = normalize(a), y = normalize(b);
    if (n < 0) throw domain_error("agree_to_order: negative order");
    if (n > x.order() || n > y.order())
        throw precision_error("agree_to_order: " + std::to_string(n) + " coefficients requested, only " +
                              std::to_string(std::min(x.order(), y.order())) + " known");
    return !QSeries::first_difference(x, y, n).has_value();
}

struct SeriesGenerator {
    std::string name;
    std::map<std::string, int> params;
    // n -> P_n, expanded with at least `order` coefficients.
    std::function<QSeries(int n, int order)> eval;

    static SeriesGenerator from_laurent(std::string name, std::map<std::string, int> params,
                                        std::function<VLaurent(int)> f)
    {
        return {std::move(name), std::move(params),
                [f = std::move(f)](int n, int order) { return to_q_series(f(n), order - 1); }};
    }
};

struct StabilizationReport {
    std::string generator;
    std::map<std::string, int> params;
    int n_max = 0;
    std::vector<bool> verdicts; // verdicts[n-1]: P_n and P_{n+1} agree
    QSeries tail;

    bool all_pass() const
    {
        for (bool v : verdicts)
            if (!v) return false;
        return true;
    }
};

// Checks P_n against P_{n+1} on n coefficients (n+1 when `strong`) for
// n = 1..n_max. Terms are evaluated concurrently when jobs > 1; the report
// does not depend on the number of jobs.
inline StabilizationReport stabilization_report(const SeriesGenerator &g, int n_max, bool strong = false, int jobs = 1)
{
    if (n_max < 1) throw domain_error("stabilization_report: needs n_max >= 1");
    const int order = n_max + 2;
    std::vector<QSeries> terms(static_cast<std::size_t>(n_max) + 1);
    parallel_for(terms.size(), jobs, [&](std::size_t i) { terms[i] = g.eval(static_cast<int>(i) + 1, order); });
    StabilizationReport r{g.name, g.params, n_max, {}, {}};
    for (int n = 1; n <= n_max; ++n)
        r.verdicts.push_back(
            agree_to_order(terms[static_cast<std::size_t>(n - 1)], terms[static_cast<std::size_t>(n)], strong ? n + 1 : n));
    r.tail = normalize(terms[static_cast<std::size_t>(n_max - 1)]).truncated(n_max);
    return r;
}

// Tail of two graphs glued along a vertex: T1 T2 / (q^2;q)_inf.
inline QSeries tail_product_1(const QSeries &t1, const QSeries &t2, int N)
{
    return (t1 * t2 / poch_inf(2, N)).truncated(N + 1);
}

// Tail of two graphs joined along an edge or a face: (1 - q) T1 T2.
inline QSeries tail_product_23(const QSeries &t1, const QSeries &t2, int N)
{
    return (poch_series(1, 1, N) * t1 * t2).truncated(N + 1);
}

inline const std::vector<std::string> &graph_families()
{
    static const std::vector<std::string> names = {"theta", "tet_2n", "G_m", "G_kl", "inadequate_chain", "chain"};
    return names;
}

namespace detail {

inline int param(const std::map<std::string, int> &p, const std::string &key)
{
    auto it = p.find(key);
    if (it == p.end()) throw domain_error("missing parameter '" + key + "'");
    return it->second;
}

inline int param_or(const std::map<std::string, int> &p, const std::string &key, int fallback)
{
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

} // namespace detail

// Stated tails of the named graph families, through q^N.
//   theta                 (q^2;q)_inf
//   tet_2n                Lambda(q) (q^2;q)_inf
//   G_m  (m)              Lambda(q)^m (q;q)_inf, glued one tetrahedron at a time
//   G_kl (k, l, minus=0)  Psi(q^(2k+1), q) f(-q^(2l+2), q); minus=1 uses f(-q^(2l+2), -q)
//   inadequate_chain (m)  (q^2;q)_inf (q;q)_inf^m
//   chain (odd=0|1, k)    chain_tail
inline QSeries graph_family_tail(const std::string &family, const std::map<std::string, int> &params, int N)
{
    using detail::param;
    if (N < 0) throw domain_error("graph_family_tail: negative order");
    if (family == "theta") return poch_inf(2, N);
    if (family == "tet_2n") return lambda_series(N) * poch_inf(2, N);
    if (family == "G_m") {
        const int m = param(params, "m");
        if (m < 0) throw domain_error("G_m: needs m >= 0");
        const QSeries tet = lambda_series(N) * poch_inf(2, N);
        QSeries t = poch_inf(1, N);
        for (int i = 0; i < m; ++i) t = tail_product_1(t, tet, N);
        return t;
    }
    if (family == "G_kl") {
        const int k = param(params, "k"), l = param(params, "l");
        if (k < 0 || l < 0) throw domain_error("G_kl: needs k, l >= 0");
        const int minus = detail::param_or(params, "minus", 0);
        return false_theta(k + 1, N) *
               theta_general(MonomialArg::make(-1, 2 * l + 2), MonomialArg::make(minus ? -1 : 1, 1), N);
    }
    if (family == "inadequate_chain") {
        const int m = param(params, "m");
        if (m < 0) throw domain_error("inadequate_chain: needs m >= 0");
        return poch_inf(2, N) * poch_inf(1, N).pow(static_cast<unsigned>(m));
    }
    if (family == "chain") {
        const int odd = param(params, "odd");
        return chain_tail(odd ? Parity::odd : Parity::even, param(params, "k"), N);
    }
    throw domain_error("unknown graph family '" + family + "'");
}

} // namespace qtail
