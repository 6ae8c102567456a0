#pragma once

// Ramanujan theta and false theta specializations, the Andrews-Gordon
// multi-sums, Lambda(q), and the 8_5 tail.

#include <optional>
#include <string>
#include <vector>

#include "qtail/errors.hpp"
#include "qtail/multisum.hpp"
#include "qtail/qseries.hpp"
#include "qtail/quantum.hpp"

namespace qtail {

// sign * q^(half_exponent / 2).
struct MonomialArg {
    int sign = 1;
    int half_exponent = 2;

    static MonomialArg make(int sign, int num, int den = 1)
    {
        if (sign != 1 && sign != -1) throw domain_error("MonomialArg: sign must be +1 or -1");
        if (den != 1 && den != 2) throw domain_error("MonomialArg: exponent denominator must be 1 or 2");
        if (num <= 0) throw domain_error("MonomialArg: exponent must be positive");
        return {sign, den == 1 ? 2 * num : num};
    }

    std::string to_string() const
    {
        std::string e = half_exponent % 2 ? std::to_string(half_exponent) + "/2" : std::to_string(half_exponent / 2);
        return (sign < 0 ? "-q^" : "q^") + e;
    }
};

namespace detail {

// sum_{i>=0} a^(i(i+1)/2) b^(i(i-1)/2) + s * sum_{i>=1} a^(i(i-1)/2) b^(i(i+1)/2)
// with s = +1 (theta) or -1 (false theta).
inline QSeries two_variable_sum(const MonomialArg &a, const MonomialArg &b, int second_sign, int N)
{
    if (a.half_exponent <= 0 || b.half_exponent <= 0) throw domain_error("theta: exponents must be positive");
    if (N < 0) throw domain_error("theta: negative order");
    const long limit = 2L * N; // in half units
    std::vector<mpq_class> half(static_cast<std::size_t>(limit) + 1);
    auto add = [&](long ea, long eb, int s) {
        const long h = ea * a.half_exponent + eb * b.half_exponent;
        if (h > limit) return false;
        int sign = s;
        if (a.sign < 0 && ea % 2) sign = -sign;
        if (b.sign < 0 && eb % 2) sign = -sign;
        half[static_cast<std::size_t>(h)] += sign;
        return true;
    };
    // Both term degrees increase strictly with i, so stop once both pass the limit.
    for (long i = 0;; ++i) {
        bool any = add(i * (i + 1) / 2, i * (i - 1) / 2, 1);
        if (i >= 1) any = add(i * (i - 1) / 2, i * (i + 1) / 2, second_sign) || any;
        if (!any) break;
    }
    std::vector<mpq_class> v(static_cast<std::size_t>(N) + 1);
    for (long h = 0; h <= limit; ++h) {
        if (h % 2) {
            if (half[static_cast<std::size_t>(h)] != 0)
                throw representation_error("theta: the series has a nonzero coefficient at q^" + std::to_string(h) + "/2");
        } else {
            v[static_cast<std::size_t>(h / 2)] = half[static_cast<std::size_t>(h)];
        }
    }
    return QSeries(0, std::move(v));
}

} // namespace detail

// Ramanujan's f(a, b) through q^N.
inline QSeries theta_general(const MonomialArg &a, const MonomialArg &b, int N)
{
    return detail::two_variable_sum(a, b, 1, N);
}

// Ramanujan's false theta Psi(a, b) through q^N.
inline QSeries psi_general(const MonomialArg &a, const MonomialArg &b, int N)
{
    return detail::two_variable_sum(a, b, -1, N);
}

// f(-q^(2k), -q), summed directly.
inline QSeries theta_f(int k, int N)
{
    if (k < 1) throw domain_error("theta_f: needs k >= 1");
    if (N < 0) throw domain_error("theta_f: negative order");
    std::vector<mpq_class> v(static_cast<std::size_t>(N) + 1);
    for (long i = 0;; ++i) {
        const long e1 = k * (i * i + i) + i * (i - 1) / 2;
        const long e2 = k * (i * i - i) + i * (i + 1) / 2;
        const int s = i % 2 ? -1 : 1;
        bool any = false;
        if (e1 <= N) v[static_cast<std::size_t>(e1)] += s, any = true;
        if (i >= 1 && e2 <= N) v[static_cast<std::size_t>(e2)] += s, any = true;
        if (!any && i >= 1) break;
    }
    return QSeries(0, std::move(v));
}

// Psi(q^(2k-1), q), summed directly.
inline QSeries false_theta(int k, int N)
{
    if (k < 1) throw domain_error("false_theta: needs k >= 1");
    if (N < 0) throw domain_error("false_theta: negative order");
    std::vector<mpq_class> v(static_cast<std::size_t>(N) + 1);
    for (long i = 0;; ++i) {
        const long e1 = k * i * i + (k - 1) * i;
        const long e2 = k * (i * i - i) + i;
        bool any = false;
        if (e1 <= N) v[static_cast<std::size_t>(e1)] += 1, any = true;
        if (i >= 1 && e2 <= N) v[static_cast<std::size_t>(e2)] -= 1, any = true;
        if (!any && i >= 1) break;
    }
    return QSeries(0, std::move(v));
}

// (q;q)_inf times the (k-1)-fold Andrews-Gordon sum.
inline QSeries ag_rhs(int k, int N)
{
    if (k < 1) throw domain_error("ag_rhs: needs k >= 1");
    return poch_inf(1, N) * nested_multisum(k - 1, 1, N);
}

// The false-theta counterpart: the last Pochhammer factor is squared.
inline QSeries false_ag_rhs(int k, int N)
{
    if (k < 2) throw domain_error("false_ag_rhs: needs k >= 2");
    return poch_inf(1, N) * nested_multisum(k - 1, 2, N);
}

// (q;q)_inf^2 sum_i (-1)^i q^((i + 3i^2)/2) / (q;q)_i^3.
inline QSeries lambda_series(int N)
{
    if (N < 0) throw domain_error("lambda_series: negative order");
    QSeries sum = QSeries::zero(N + 1);
    for (int i = 0; (i + 3 * i * i) / 2 <= N; ++i) {
        const QSeries inv = inv_poch_series(1, i, N);
        QSeries term = QSeries::monomial((i + 3 * i * i) / 2, N, i % 2 ? -1 : 1) * inv * inv * inv;
        sum += term;
    }
    const QSeries p = poch_inf(1, N);
    return p * p * sum;
}

// Smallest k whose term in the 8_5 sum can reach q^N is excluded; terms
// start at q^(k + k^2 - 2 floor(k^2/4)).
inline int tail_85_default_bound(int N)
{
    int k = 0;
    while ((k + 1) + (k + 1) * (k + 1) - 2 * (((k + 1) * (k + 1)) / 4) <= N) ++k;
    return k;
}

// (q^2;q)_inf (q;q)_inf sum_k q^(k+k^2)/(q;q)_k sum_i q^(-2i(k-i)) [k choose i]_q^2.
inline QSeries tail_85(int N, std::optional<int> k_bound = std::nullopt)
{
    if (N < 0) throw domain_error("tail_85: negative order");
    const int kmax = k_bound.value_or(tail_85_default_bound(N));
    if (kmax < 0) throw domain_error("tail_85: negative k bound");
    std::vector<mpq_class> acc(static_cast<std::size_t>(N) + 1);
    for (int k = 0; k <= kmax; ++k) {
        VLaurent inner;
        for (int i = 0; i <= k; ++i) inner += q_pow(-2 * i * (k - i)) * qbinom(k, i).pow(2);
        const VLaurent term = q_pow(k + k * k) * inner;
        std::vector<mpq_class> t(static_cast<std::size_t>(N) + 1);
        bool any = false;
        for (auto &[e, c] : term.terms()) {
            if (e % 4 || e < 0) throw consistency_error("tail_85: term left q-integral non-negative range");
            if (e / 4 <= N) t[static_cast<std::size_t>(e / 4)] = c, any = true;
        }
        if (!any) continue;
        const QSeries s = QSeries(0, std::move(t)) * inv_poch_series(1, k, N);
        for (int j = 0; j <= N; ++j) acc[static_cast<std::size_t>(j)] += s.coeff(j);
    }
    return poch_inf(2, N) * poch_inf(1, N) * QSeries(0, std::move(acc));
}

} // namespace qtail
