#include <random>
#include <vector>

#include "catch_amalgamated.hpp"

#include "qtail/identities.hpp"
#include "qtail/skein.hpp"

using namespace qtail;

namespace {

// Plain truncated integer power series, kept separate from QSeries so the
// expansions below do not share code with the library.
using Poly = std::vector<long long>;

Poly unit(int N)
{
    Poly p(static_cast<std::size_t>(N) + 1);
    p[0] = 1;
    return p;
}

Poly mul(const Poly &a, const Poly &b)
{
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (std::size_t j = 0; i + j < r.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// times (1 - q^j)
Poly times_factor(Poly p, int j)
{
    for (std::size_t i = p.size(); i-- > static_cast<std::size_t>(j);) p[i] -= p[i - static_cast<std::size_t>(j)];
    return p;
}

// divided by (1 - q^j)
Poly over_factor(Poly p, int j)
{
    for (std::size_t i = static_cast<std::size_t>(j); i < p.size(); ++i) p[i] += p[i - static_cast<std::size_t>(j)];
    return p;
}

// prod_{i>=0} (1 - q^(c + step i)) through q^N
Poly product(int c, int step, int N)
{
    Poly p = unit(N);
    for (int e = c; e <= N; e += step) p = times_factor(p, e);
    return p;
}

QSeries to_series(const Poly &p)
{
    std::vector<mpq_class> v;
    for (long long c : p) v.emplace_back(static_cast<long>(c));
    return QSeries(0, std::move(v));
}

} // namespace

TEST_CASE("Jacobi triple product")
{
    const int N = 40;
    CHECK(theta_general(MonomialArg::make(-1, 3), MonomialArg::make(-1, 2), N) ==
          to_series(mul(mul(product(3, 5, N), product(2, 5, N)), product(5, 5, N))));
    CHECK(theta_general(MonomialArg::make(-1, 3), MonomialArg::make(-1, 2), N) ==
          poch_inf(3, N, 5) * poch_inf(2, N, 5) * poch_inf(5, N, 5));
    // f(-q^x, -q^y) = (q^x; q^(x+y)) (q^y; q^(x+y)) (q^(x+y); q^(x+y))
    for (int x = 1; x <= 5; ++x)
        for (int y = 1; y <= 5; ++y) {
            INFO(x << "," << y);
            const int s = x + y;
            CHECK(theta_general(MonomialArg::make(-1, x), MonomialArg::make(-1, y), N) ==
                  to_series(mul(mul(product(x, s, N), product(y, s, N)), product(s, s, N))));
        }
    CHECK(theta_general(MonomialArg::make(-1, 2), MonomialArg::make(-1, 1), 25) == poch_inf(1, 25));
}

TEST_CASE("theta is symmetric, false theta is not")
{
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> e(1, 6), s(0, 1);
    for (int t = 0; t < 40; ++t) {
        const MonomialArg a = MonomialArg::make(s(rng) ? 1 : -1, e(rng));
        const MonomialArg b = MonomialArg::make(s(rng) ? 1 : -1, e(rng));
        INFO(a.to_string() << " " << b.to_string());
        CHECK(theta_general(a, b, 30) == theta_general(b, a, 30));
    }
    CHECK_FALSE(psi_general(MonomialArg::make(1, 3), MonomialArg::make(1, 1), 10) ==
                psi_general(MonomialArg::make(1, 1), MonomialArg::make(1, 3), 10));
}

TEST_CASE("half-integer exponents")
{
    const MonomialArg h = MonomialArg::make(1, 1, 2);
    CHECK(h.to_string() == "q^1/2");
    CHECK_THROWS_AS(theta_general(h, h, 5), representation_error);
    // The two sums cancel term by term.
    CHECK(psi_general(h, h, 12) == QSeries::one(12));
    CHECK_THROWS_AS(MonomialArg::make(1, 1, 3), domain_error);
    CHECK_THROWS_AS(MonomialArg::make(2, 1), domain_error);
    CHECK_THROWS_AS(MonomialArg::make(1, 0), domain_error);
}

TEST_CASE("theta_f")
{
    CHECK(theta_f(1, 30) == poch_inf(1, 30));
    CHECK(theta_f(2, 14) == to_series({1, -1, 0, 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0}));
    for (int k = 1; k <= 6; ++k) {
        CHECK(theta_f(k, 40) == theta_general(MonomialArg::make(-1, 2 * k), MonomialArg::make(-1, 1), 40));
        CHECK(theta_f(k, 40).truncated(21) == theta_f(k, 20));
    }
    CHECK_THROWS_AS(theta_f(0, 5), domain_error);
}

TEST_CASE("false_theta")
{
    CHECK(false_theta(1, 20) == QSeries::one(20));
    CHECK(false_theta(2, 11) == to_series({1, -1, 0, 1, 0, 0, -1, 0, 0, 0, 1, 0}));
    for (int k = 1; k <= 6; ++k) {
        CHECK(false_theta(k, 40) == psi_general(MonomialArg::make(1, 2 * k - 1), MonomialArg::make(1, 1), 40));
        CHECK(false_theta(k, 40).truncated(21) == false_theta(k, 20));
    }
    CHECK_THROWS_AS(false_theta(0, 5), domain_error);
}

TEST_CASE("Andrews-Gordon sums")
{
    const int N = 50;
    CHECK(ag_rhs(1, N) == poch_inf(1, N));
    // k = 2 summed directly: (q;q)_inf sum q^(l(l+1)) / (q;q)_l
    Poly direct(static_cast<std::size_t>(N) + 1);
    for (int l = 0; l * (l + 1) <= N; ++l) {
        Poly t(static_cast<std::size_t>(N) + 1);
        t[static_cast<std::size_t>(l * (l + 1))] = 1;
        for (int j = 1; j <= l; ++j) t = over_factor(t, j);
        for (std::size_t i = 0; i < t.size(); ++i) direct[i] += t[i];
    }
    CHECK(ag_rhs(2, N) == to_series(mul(product(1, 1, N), direct)));
    for (int k = 2; k <= 5; ++k) {
        INFO("k=" << k);
        CHECK(ag_rhs(k, N) == theta_f(k, N));
        CHECK(false_ag_rhs(k, N) == false_theta(k, N));
    }
    CHECK(false_ag_rhs(2, N) == chain_tail(Parity::odd, 1, N));
    CHECK_THROWS_AS(false_ag_rhs(1, N), domain_error);
}

TEST_CASE("chain tails and theta functions")
{
    for (int k = 1; k <= 4; ++k) {
        CHECK(chain_tail(Parity::even, k, 40) == theta_f(k, 40));
        CHECK(chain_tail(Parity::odd, k, 40) == false_theta(k + 1, 40));
    }
}

TEST_CASE("Lambda(q)")
{
    CHECK(lambda_series(0) == QSeries::one(0));
    const int N = 12;
    // (q;q)_inf^2 sum (-1)^i q^((i + 3i^2)/2) / (q;q)_i^3
    Poly sum(static_cast<std::size_t>(N) + 1);
    for (int i = 0; (i + 3 * i * i) / 2 <= N; ++i) {
        Poly t(static_cast<std::size_t>(N) + 1);
        t[static_cast<std::size_t>((i + 3 * i * i) / 2)] = i % 2 ? -1 : 1;
        for (int r = 0; r < 3; ++r)
            for (int j = 1; j <= i; ++j) t = over_factor(t, j);
        for (std::size_t k = 0; k < t.size(); ++k) sum[k] += t[k];
    }
    const QSeries expect = to_series(mul(mul(product(1, 1, N), product(1, 1, N)), sum));
    CHECK(lambda_series(N) == expect);
    CHECK(lambda_series(6) == expect.truncated(7));
    CHECK(lambda_series(30).truncated(13) == lambda_series(12));
}

TEST_CASE("8_5 tail")
{
    CHECK(tail_85(0) == QSeries::one(0));
    CHECK(tail_85_default_bound(10) == 3);
    const int N = 10;
    // Brute force with k <= 4 on integers.
    Poly sum(static_cast<std::size_t>(N) + 1);
    for (int k = 0; k <= 4; ++k) {
        for (int i = 0; i <= k; ++i) {
            // q^(k + k^2 - 2i(k-i)) [k choose i]_q^2 / (q;q)_k
            Poly b = unit(N + 2 * k * k);
            // Gaussian binomial as (q;q)_k / ((q;q)_i (q;q)_(k-i)), exact in integers.
            for (int j = 1; j <= k; ++j) b = times_factor(b, j);
            for (int j = 1; j <= i; ++j) b = over_factor(b, j);
            for (int j = 1; j <= k - i; ++j) b = over_factor(b, j);
            Poly t(static_cast<std::size_t>(N) + 1);
            const int shift = k + k * k - 2 * i * (k - i);
            REQUIRE(shift >= 0);
            const Poly b2 = mul(b, b);
            for (int e = 0; e + shift <= N; ++e) t[static_cast<std::size_t>(e + shift)] = b2[static_cast<std::size_t>(e)];
            for (int j = 1; j <= k; ++j) t = over_factor(t, j);
            for (std::size_t e = 0; e < t.size(); ++e) sum[e] += t[e];
        }
    }
    const QSeries expect = to_series(mul(mul(product(2, 1, N), product(1, 1, N)), sum));
    CHECK(tail_85(N) == expect);
    CHECK(tail_85(N, 4) == expect);
    CHECK(tail_85(N, 7) == expect);

    const QSeries t30 = tail_85(30);
    CHECK(t30.shift() == 0);
    CHECK(t30.coeff(0) == 1);
    for (const auto &c : t30.coeffs()) CHECK(c.get_den() == 1);
    CHECK(tail_85(30, tail_85_default_bound(30) + 3) == t30);
    CHECK(t30.truncated(11) == tail_85(N));
    CHECK_THROWS_AS(tail_85(-1), domain_error);
}
