#include <random>
#include <vector>

#include "catch_amalgamated.hpp"

#include "qtail/qrational.hpp"
#include "qtail/qseries.hpp"
#include "qtail/quantum.hpp"

using namespace qtail;

namespace {

VLaurent vpoly(std::vector<std::pair<int, long>> t)
{
    std::vector<VLaurent::term_type> terms;
    for (auto &[e, c] : t) terms.emplace_back(e, mpq_class(c));
    return VLaurent::from_terms(std::move(terms));
}

QSeries series(int shift, std::vector<long> c)
{
    std::vector<mpq_class> v(c.begin(), c.end());
    return QSeries(shift, std::move(v));
}

// Polynomial in q (v-exponents 4k) from integer coefficients of q^0, q^1, ...
VLaurent qpoly(std::vector<long> c)
{
    std::vector<std::pair<int, long>> t;
    for (std::size_t k = 0; k < c.size(); ++k) t.emplace_back(4 * static_cast<int>(k), c[k]);
    return vpoly(t);
}

QSeries random_series(std::mt19937 &rng, int order, int shift)
{
    std::uniform_int_distribution<int> d(-3, 3);
    std::vector<mpq_class> v(static_cast<std::size_t>(order));
    for (auto &x : v) x = d(rng);
    if (v[0] == 0) v[0] = 1;
    return QSeries(shift, std::move(v));
}

} // namespace

TEST_CASE("quantum integers")
{
    CHECK(quantum_int(0).is_zero());
    CHECK(quantum_int(1) == VLaurent(1));
    CHECK(quantum_int(2) == vpoly({{2, 1}, {-2, 1}}));
    CHECK(quantum_int(3) == vpoly({{4, 1}, {0, 1}, {-4, 1}}));

    const VLaurent v2_minus = vpoly({{2, 1}, {-2, -1}});
    for (int n = 0; n <= 30; ++n) {
        INFO("n = " << n);
        VLaurent rhs = n == 0 ? VLaurent{} : vpoly({{2 * n, 1}, {-2 * n, -1}});
        CHECK(quantum_int(n) * v2_minus == rhs);
    }
    CHECK_THROWS_AS(quantum_int(-1), domain_error);
}

TEST_CASE("delta_n is the signed quantum integer")
{
    CHECK(delta_n(0) == VLaurent(1));
    CHECK(delta_n(1) == vpoly({{2, -1}, {-2, -1}}));
    CHECK(delta_n(2) == qpoly({0, 1}) + vpoly({{4, 1}, {-4, 1}}) - qpoly({0, 1}) + VLaurent(1));
    for (int n = 0; n <= 30; ++n) {
        VLaurent expected = quantum_int(n + 1);
        if (n % 2) expected = -expected;
        CHECK(delta_n(n) == expected);
    }
}

TEST_CASE("quantum factorial")
{
    CHECK(quantum_fact(0) == VLaurent(1));
    CHECK(quantum_fact(2) == quantum_int(2));
    // [2][3] multiplied out by hand.
    CHECK(quantum_fact(3) == vpoly({{6, 1}, {2, 2}, {-2, 2}, {-6, 1}}));

    // [n]! = q^((n - n^2)/4) (1 - q)^(-n) (q; q)_n
    const VLaurent one_minus_q = qpoly({1, -1});
    for (int n = 0; n <= 15; ++n) {
        INFO("n = " << n);
        VLaurent lhs = quantum_fact(n) * one_minus_q.pow(static_cast<unsigned>(n)) * v_pow(n * n - n);
        CHECK(lhs == poch_finite(1, 1, n));
    }
}

TEST_CASE("finite Pochhammer symbols")
{
    CHECK(poch_finite(1, 1, 0) == VLaurent(1));
    CHECK(poch_finite(1, 1, 2) == qpoly({1, -1, -1, 1}));
    CHECK(poch_finite(-1, 1, 1) == qpoly({1, 1}));
    CHECK_THROWS_AS(poch_finite(2, 1, 1), domain_error);

    for (int m = 0; m <= 12; ++m)
        for (int n = 0; n <= 12; ++n)
            CHECK(poch_finite(1, 1, m + n) == poch_finite(1, 1, m) * poch_finite(1, m + 1, n));
}

TEST_CASE("infinite Pochhammer truncation")
{
    auto p = poch_inf(1, 1);
    CHECK(p.order() == 2);
    CHECK(p == series(0, {1, -1}));
    CHECK(poch_inf(1, 6) == series(0, {1, -1, -1, 0, 0, 1, 0}));
    CHECK(poch_inf(2, 4) == series(0, {1, 0, -1, -1, -1}));
    CHECK_THROWS_AS(poch_inf(0, 4), domain_error);
    CHECK_THROWS_AS(poch_inf(-2, 4), domain_error);

    // Independent route: multiply the first N finite factors as polynomials.
    for (int c = 1; c <= 3; ++c)
        for (int N = 0; N <= 25; ++N)
            CHECK(poch_inf(c, N) == to_q_series(poch_finite(1, c, N + 1), N));
}

TEST_CASE("q-binomial coefficients")
{
    CHECK(qbinom(5, 0) == VLaurent(1));
    CHECK(qbinom(2, 1) == qpoly({1, 1}));
    CHECK(qbinom(4, 2) == qpoly({1, 1, 2, 1, 1}));
    CHECK_THROWS_AS(qbinom(3, 4), domain_error);
    CHECK_THROWS_AS(qbinom(3, -1), domain_error);

    for (int n = 0; n <= 20; ++n)
        for (int i = 0; i <= n; ++i) {
            INFO("n = " << n << ", i = " << i);
            CHECK(qbinom(n, i) == qbinom(n, n - i));
            if (n >= 1 && i >= 1 && i <= n - 1)
                CHECK(qbinom(n, i) == qbinom(n - 1, i - 1) + q_pow(i) * qbinom(n - 1, i));
            // Definition as an exact quotient of Pochhammer symbols.
            if (n <= 12) {
                auto quo = VLaurent::exact_div(poch_finite(1, 1, n), poch_finite(1, 1, i) * poch_finite(1, 1, n - i));
                REQUIRE(quo);
                CHECK(*quo == qbinom(n, i));
            }
            const VLaurent b = qbinom(n, i);
            for (auto &[e, c] : b.terms()) CHECK((e % 4 == 0 && c > 0 && c.get_den() == 1));
        }
}

TEST_CASE("exact Laurent division")
{
    auto a = quantum_int(6);
    auto q = VLaurent::exact_div(a, quantum_int(3));
    REQUIRE(q);
    CHECK(*q * quantum_int(3) == a);
    CHECK_FALSE(VLaurent::exact_div(quantum_int(5), quantum_int(2)));
    CHECK_THROWS_AS(VLaurent::exact_div(a, VLaurent{}), domain_error);
}

TEST_CASE("rational values with quantum-integer denominators")
{
    VRational half_loop = VRational(1).div_qint(2);
    CHECK(half_loop + half_loop == VRational(2).div_qint(2));
    CHECK(half_loop * VRational(quantum_int(2)) == VRational(1));
    CHECK((VRational(quantum_int(4)) / VRational(quantum_int(2))).as_laurent() == vpoly({{4, 1}, {-4, 1}}));
    CHECK_FALSE(VRational(quantum_int(3)).div_qint(2).as_laurent());

    auto f = factor_quantum_ints(quantum_int(4) * quantum_int(3) * vpoly({{6, -2}}));
    REQUIRE(f);
    CHECK(f->first == vpoly({{6, -2}}));
    CHECK(f->second.expand() == quantum_int(4) * quantum_int(3));
    CHECK_FALSE(factor_quantum_ints(qpoly({1, 1, 1, 1, 2})));
    CHECK_THROWS_AS(VRational(1) / VRational(qpoly({1, 1, 1, 1, 2})), representation_error);

    // (a/b)(b/a) = 1 for products of quantum integers.
    VRational x = VRational(quantum_fact(5)).div_qint(7).div_qint(3, 2);
    VRational y = VRational(quantum_int(7) * quantum_int(3).pow(2)) / VRational(quantum_fact(5));
    CHECK(x * y == VRational(1));
}

TEST_CASE("conversion to q-series")
{
    auto s = to_q_series(vpoly({{4, 1}, {8, 1}}), 1);
    CHECK(s.shift() == 1);
    CHECK(s.quarter() == 0);
    CHECK(s.coeffs() == std::vector<mpq_class>{1, 1});

    auto t = to_q_series(vpoly({{-4, 1}, {0, 2}, {4, 1}}), 2);
    CHECK(t.shift() == -1);
    CHECK(t.coeffs() == std::vector<mpq_class>{1, 2, 1});

    CHECK_THROWS_AS(to_q_series(vpoly({{2, 1}, {4, 1}}), 3), representation_error);
    CHECK_THROWS_AS(to_q_series(VLaurent{}, 3), domain_error);

    // Fractional shifts are carried but refused by comparisons.
    auto h = to_q_series(quantum_int(2), 3);
    CHECK(h.quarter() == 2);
    CHECK(h.shift() == -1);
    CHECK_THROWS_AS(h == h, representation_error);
    // [4]/[2] = q + q^-1.
    auto r = to_q_series(VRational(quantum_int(4)).div_qint(2), 4);
    CHECK(r == series(-1, {1, 0, 1, 0, 0}));
}

TEST_CASE("series multiplication")
{
    CHECK(series(0, {1, -1, 0, 0}) * series(0, {1, 1, 1, 1}) == series(0, {1, 0, 0, 0}));
    auto a = series(2, {3, -1, 4, 1, -5});
    CHECK(a * QSeries::one(4) == a);
    // Pochhammer concatenation (a;q)_{m+n} = (a;q)_m (a q^m;q)_n.
    CHECK(poch_series(1, 2, 12) * poch_series(3, 2, 12) == poch_series(1, 4, 12));
    // Order is the minimum of the operand orders.
    CHECK((series(0, {1, 1, 1}) * series(0, {1, 1, 1, 1, 1})).order() == 3);

    std::mt19937 rng(20261019);
    for (int trial = 0; trial < 50; ++trial) {
        auto x = random_series(rng, 8, trial % 3 - 1);
        auto y = random_series(rng, 8, trial % 2);
        auto z = random_series(rng, 8, 0);
        CHECK(x * y == y * x);
        CHECK((x * y) * z == x * (y * z));
        CHECK((x * y) / y == x);
    }
}

TEST_CASE("series division")
{
    CHECK(QSeries::one(5) / series(0, {1, -1, 0, 0, 0, 0}) == series(0, {1, 1, 1, 1, 1, 1}));
    auto a = series(1, {2, 0, -3, 1});
    CHECK(a / a == QSeries::one(3));
    CHECK(poch_series(1, 4, 10) / poch_series(1, 2, 10) == poch_series(3, 2, 10));
    CHECK_THROWS_AS(a / QSeries::zero(4), domain_error);
    CHECK(inv_poch_series(1, 3, 10) * poch_series(1, 3, 10) == QSeries::one(10));
}

TEST_CASE("series addition tracks absolute precision")
{
    auto a = series(0, {1, 1});          // 1 + q + O(q^2)
    auto b = series(5, {1, 0, 0, 0, 0}); // q^5 + O(q^10)
    auto s = a + b;
    CHECK(s.shift() == 0);
    CHECK(s.order() == 2);
    // Leading cancellation moves the shift and keeps the absolute bound.
    auto c = series(0, {1, 2, 3}) - series(0, {1, 0, 0});
    CHECK(c.shift() == 1);
    CHECK(c.precision_end() == 3);
    CHECK_THROWS_AS(c.coeff(3), precision_error);
}
