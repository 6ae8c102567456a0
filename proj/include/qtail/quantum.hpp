#pragma once

// Quantum integers, Pochhammer symbols and q-binomials as exact
// v-Laurent polynomials (q = v^4).

#include <map>
#include <mutex>
#include <utility>

#include "qtail/errors.hpp"
#include "qtail/laurent.hpp"

namespace qtail {

// q^k as a v-Laurent monomial; k is measured in quarter powers of q.
inline VLaurent v_pow(int quarter_exponent, const mpq_class &c = 1)
{
    return VLaurent::monomial(quarter_exponent, c);
}

inline VLaurent q_pow(int k, const mpq_class &c = 1) { return VLaurent::monomial(4 * k, c); }

// [n] = (q^(n/2) - q^(-n/2)) / (q^(1/2) - q^(-1/2)) = sum_j v^(2(n-1) - 4j).
inline VLaurent quantum_int(int n)
{
    if (n < 0) throw domain_error("quantum_int: negative argument");
    std::vector<VLaurent::term_type> t;
    t.reserve(static_cast<std::size_t>(n));
    for (int j = n - 1; j >= 0; --j) t.emplace_back(2 * (n - 1) - 4 * j, mpq_class(1));
    return VLaurent::from_terms(std::move(t));
}

// Value of the closed n-colored projector: (-1)^n [n+1].
inline VLaurent delta_n(int n)
{
    if (n < 0) throw domain_error("delta_n: negative argument");
    VLaurent d = quantum_int(n + 1);
    return n % 2 ? -d : d;
}

// The loop value -A^2 - A^-2.
inline VLaurent loop_value() { return delta_n(1); }

inline VLaurent quantum_fact(int n)
{
    if (n < 0) throw domain_error("quantum_fact: negative argument");
    VLaurent r(1);
    for (int i = 2; i <= n; ++i) r *= quantum_int(i);
    return r;
}

// (sign * q^c; q)_n = prod_{j<n} (1 - sign * q^(c+j)).
inline VLaurent poch_finite(int sign, int c, int n)
{
    if (sign != 1 && sign != -1) throw domain_error("poch_finite: sign must be +1 or -1");
    if (n < 0) throw domain_error("poch_finite: negative length");
    VLaurent r(1);
    for (int j = 0; j < n; ++j) r *= VLaurent(1) - q_pow(c + j, sign);
    return r;
}

namespace detail {

struct qbinom_table {
    std::mutex mu;
    std::map<std::pair<int, int>, VLaurent> memo;
};

inline qbinom_table &qbinom_cache()
{
    static qbinom_table t;
    return t;
}

} // namespace detail

// Gaussian binomial [n choose i]_q via the Pascal recurrence
// [n,i] = [n-1,i-1] + q^i [n-1,i].
inline VLaurent qbinom(int n, int i)
{
    if (n < 0 || i < 0 || i > n) throw domain_error("qbinom: index out of range");
    if (i == 0 || i == n) return VLaurent(1);
    auto &cache = detail::qbinom_cache();
    {
        std::lock_guard lk(cache.mu);
        if (auto it = cache.memo.find({n, i}); it != cache.memo.end()) return it->second;
    }
    VLaurent r = qbinom(n - 1, i - 1) + q_pow(i) * qbinom(n - 1, i);
    std::lock_guard lk(cache.mu);
    cache.memo.emplace(std::make_pair(n, i), r);
    return r;
}

} // namespace qtail
