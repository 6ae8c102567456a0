#pragma once

// Closed forms for skein elements built from Jones-Wenzl projectors:
// admissibility, the bubble expansion coefficients, theta and tetrahedron
// values with all colors 2n, the (2,f) torus knot, and the multi-sum tails
// of bubble chains.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "qtail/errors.hpp"
#include "qtail/multisum.hpp"
#include "qtail/qrational.hpp"
#include "qtail/qseries.hpp"
#include "qtail/quantum.hpp"

namespace qtail {

struct AdmissibleTriple {
    int a, b, c;
    int x, y, z; // a = x + y, b = x + z, c = y + z

    friend bool operator==(const AdmissibleTriple &, const AdmissibleTriple &) = default;
};

inline std::optional<AdmissibleTriple> admissible(int a, int b, int c)
{
    if (a < 0 || b < 0 || c < 0 || (a + b + c) % 2) return std::nullopt;
    if (c > a + b || c < std::abs(a - b)) return std::nullopt;
    return AdmissibleTriple{a, b, c, (a + b - c) / 2, (a + c - b) / 2, (b + c - a) / 2};
}

namespace detail {

// prod of [j] over a list, as a numerator polynomial.
inline VLaurent qint_product(const std::vector<int> &js)
{
    VLaurent r(1);
    for (int j : js) r *= quantum_int(j);
    return r;
}

inline QDen qint_den(const std::vector<int> &js)
{
    QDen d;
    for (int j : js) {
        if (j == 0) throw domain_error("division by [0]");
        d.mul_qint(j);
    }
    return d;
}

// [n]! as a denominator.
inline QDen fact_den(int n, int power = 1)
{
    QDen d;
    for (int j = 2; j <= n; ++j) d.mul_qint(j, power);
    return d;
}

} // namespace detail

// Coefficient of the i-th term in the expansion of the bubble element with
// top colors m, n, k strands joining the tops and l strands joining the
// bottoms.
inline VRational bubble_coeff(int m, int n, int k, int l, int i)
{
    if (m < 0 || n < 0) throw domain_error("bubble_coeff: negative color");
    if (l < 1 || k < l) throw domain_error("bubble_coeff: needs k >= l >= 1");
    if (i < 0 || i > std::min({m, n, l})) throw domain_error("bubble_coeff: index out of range");
    std::vector<int> num, den;
    for (int j = 0; j < l - i; ++j) num.push_back(k - j);
    for (int s = 0; s < i; ++s) {
        num.push_back(n - s);
        num.push_back(m - s);
    }
    for (int j = 0; j < l - i; ++j) num.push_back(m + n + k - i - j + 1);
    for (int t = 0; t < l; ++t) {
        den.push_back(n + k - t);
        den.push_back(m + k - t);
    }
    VLaurent top = detail::qint_product(num) * qbinom(l, i) * v_pow(2 * i * (i - l));
    if ((i + l) % 2) top = -top;
    return VRational(std::move(top), detail::qint_den(den));
}

// Theta(2n, 2n, 2n).
inline VRational theta_2n(int n)
{
    if (n < 0) throw domain_error("theta_2n: negative argument");
    if (n == 0) return VRational(1);
    return bubble_coeff(n, n, n, n, 0) * VRational(delta_n(2 * n));
}

// Tetrahedron with all six edges colored 2n.
inline VRational tet_2n(int n)
{
    if (n < 0) throw domain_error("tet_2n: negative argument");
    VRational sum;
    for (int i = 3 * n; i <= 4 * n; ++i) {
        QDen d = detail::fact_den(4 * n - i, 3) * detail::fact_den(i - 3 * n, 4);
        VLaurent t = quantum_fact(i + 1);
        if (i % 2) t = -t;
        sum += VRational(std::move(t), std::move(d));
    }
    return sum * VRational(quantum_fact(n).pow(12), detail::fact_den(2 * n, 6));
}

// P(n, i): the i-th bubble coefficient for all colors n, after closing the
// middle through f^(n+i).
inline VRational p_coeff(int n, int i)
{
    if (n < 1) throw domain_error("p_coeff: needs n >= 1");
    if (i < 0 || i > n) throw domain_error("p_coeff: index out of range");
    return bubble_coeff(n, n, n, n, i) * VRational(delta_n(2 * n)) / VRational(delta_n(n + i));
}

namespace detail {

// sign * q^(e/4) * prod (q;q)_{a} / prod (q;q)_{b}, exactly. Uses
// (q;q)_a = [a]! (1-q)^a q^((a^2-a)/4); the (1-q) powers must balance.
inline VRational poch_ratio(int sign, int quarter_exponent, const std::vector<int> &num, const std::vector<int> &den)
{
    int balance = 0, v_exp = quarter_exponent;
    VLaurent top(sign);
    QDen bottom;
    for (int a : num) {
        if (a < 0) throw domain_error("poch_ratio: negative length");
        balance += a;
        v_exp += a * a - a;
        top *= quantum_fact(a);
    }
    for (int b : den) {
        if (b < 0) throw domain_error("poch_ratio: negative length");
        balance -= b;
        v_exp -= b * b - b;
        bottom = bottom * fact_den(b);
    }
    if (balance != 0) throw consistency_error("poch_ratio: unbalanced (1-q) powers");
    return VRational(top * v_pow(v_exp), std::move(bottom));
}

} // namespace detail

// Closed form for the bubble coefficient with top colors (n, i), k = l = n,
// at index j.
inline VRational nn_i_coeff(int n, int i, int j)
{
    if (n < 1) throw domain_error("nn_i_coeff: needs n >= 1");
    if (i < 0 || i > n) throw domain_error("nn_i_coeff: needs 0 <= i <= n");
    if (j < 0 || j > i) throw domain_error("nn_i_coeff: needs 0 <= j <= i");
    const int sign = (j + n) % 2 ? -1 : 1;
    return detail::poch_ratio(sign, 4 * j * j + 2 * j - 2 * n, {i, i, n, n, n, n, 2 * n + i - j + 1},
                              {i - j, j, j, 2 * n, n + i, n + i + 1, n - j, n - j});
}

// Normalized colored Jones polynomial of the (2, f) torus knot or link,
// up to a power of -A. The division by Delta_n must be exact.
inline VLaurent colored_jones_torus(int f, int n)
{
    if (f < 1) throw domain_error("colored_jones_torus: needs f >= 1");
    if (n < 0) throw domain_error("colored_jones_torus: needs n >= 0");
    VLaurent sum;
    for (int i = 0; i <= n; ++i) {
        VLaurent t = delta_n(2 * i) * v_pow(f * (2 * i + 2 * i * i - 2 * n - n * n));
        if ((f * (n - i)) % 2) t = -t;
        sum += t;
    }
    auto q = VLaurent::exact_div(sum, delta_n(n));
    if (!q) throw consistency_error("colored_jones_torus: sum is not divisible by Delta_n");
    return *q;
}

enum class Parity { even, odd };

inline std::string to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

// Tail of a chain of 2k (even) or 2k+1 (odd) bubbles with all colors n:
// (q;q)_inf times the k-1 fold (even) or k fold (odd, last factor squared)
// nested sum.
inline QSeries chain_tail(Parity parity, int k, int N)
{
    if (k < 1) throw domain_error("chain_tail: needs k >= 1");
    if (N < 0) throw domain_error("chain_tail: negative order");
    const QSeries sum = parity == Parity::even ? nested_multisum(k - 1, 1, N) : nested_multisum(k, 2, N);
    return poch_inf(1, N) * sum;
}

} // namespace qtail
