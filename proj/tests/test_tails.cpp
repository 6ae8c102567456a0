#include <random>
#include <vector>

#include "catch_amalgamated.hpp"

#include "qtail/tails.hpp"

using namespace qtail;

namespace {

QSeries series(int shift, std::vector<long> c)
{
    std::vector<mpq_class> v(c.begin(), c.end());
    return QSeries(shift, std::move(v));
}

SeriesGenerator constant(QSeries s)
{
    return {"constant", {}, [s](int, int order) { return s.truncated(order); }};
}

} // namespace

TEST_CASE("normalize")
{
    CHECK(normalize(series(2, {-1, 1, 0})) == series(0, {1, -1, 0}));
    CHECK(normalize(series(-3, {-2, 4})) == series(0, {1, -2}));
    const VLaurent p = VLaurent(-1) * q_pow(2) + q_pow(3);
    CHECK(normalize(p, 3) == series(0, {1, -1, 0, 0}));
    CHECK_THROWS_AS(normalize(QSeries::zero(4)), domain_error);

    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-4, 4), sh(-6, 6);
    for (int t = 0; t < 50; ++t) {
        std::vector<mpq_class> v(8);
        for (auto &x : v) x = d(rng);
        if (v[0] == 0) v[0] = 3;
        const QSeries s(sh(rng), v);
        const QSeries n = normalize(s);
        CHECK(normalize(n) == n);
        mpq_class c = d(rng);
        if (c == 0) c = -5;
        CHECK(normalize(s * QSeries::monomial(sh(rng), 10, c)) == n);
    }
}

TEST_CASE("agree_to_order")
{
    const int n = 6;
    const QSeries finite = to_q_series(poch_finite(1, 1, n), 20);
    CHECK(agree_to_order(finite, poch_inf(1, 20), n + 1));
    CHECK_FALSE(agree_to_order(finite, poch_inf(1, 20), n + 2));
    CHECK(agree_to_order(series(0, {1, 1}), series(0, {1, -1}), 1));
    CHECK_FALSE(agree_to_order(series(0, {1, 1}), series(0, {1, -1}), 2));
    // Sign and power of q do not matter.
    CHECK(agree_to_order(series(5, {-1, 1, 2}), series(-2, {1, -1, -2}), 3));
    CHECK_THROWS_AS(agree_to_order(series(0, {1, 1}), series(0, {1, 1, 1}), 3), precision_error);
    const QSeries x = poch_inf(2, 15);
    for (int k = 0; k <= 16; ++k) CHECK(agree_to_order(x, x, k));
}

TEST_CASE("normalized torus knot Jones starts like (q;q)_inf")
{
    for (int n = 1; n <= 5; ++n) {
        const QSeries j = normalize(colored_jones_torus(3, n), 10);
        CHECK(agree_to_order(j, poch_inf(1, 10), n + 1));
    }
}

TEST_CASE("stabilization reports")
{
    const auto r = stabilization_report(constant(series(0, {1, -1, 0, 0, 0, 0, 0, 0, 0, 0})), 5);
    CHECK(r.all_pass());
    CHECK(r.verdicts.size() == 5);
    CHECK(r.tail == series(0, {1, -1, 0, 0, 0}));

    SeriesGenerator alt{"alt", {}, [](int n, int order) {
                            std::vector<mpq_class> v(static_cast<std::size_t>(order));
                            v[0] = 1;
                            v[1] = n % 2 ? -1 : 1;
                            return QSeries(0, v);
                        }};
    const auto a = stabilization_report(alt, 4);
    CHECK(a.verdicts == std::vector<bool>{true, false, false, false});
    CHECK_FALSE(a.all_pass());
    CHECK_THROWS_AS(stabilization_report(alt, 0), domain_error);
}

TEST_CASE("torus knot tails")
{
    const int n_max = 12;
    for (int f : {3, 5}) {
        auto g = SeriesGenerator::from_laurent("torus", {{"f", f}}, [f](int n) { return colored_jones_torus(f, n); });
        const auto r = stabilization_report(g, n_max, false, 4);
        CHECK(r.all_pass());
        const QSeries expect = f == 3 ? theta_f(1, n_max - 1) : theta_f(2, n_max - 1);
        CHECK(r.tail == expect);
        const auto serial = stabilization_report(g, n_max, false, 1);
        CHECK(serial.verdicts == r.verdicts);
        CHECK(serial.tail == r.tail);
    }
    auto g4 = SeriesGenerator::from_laurent("torus", {{"f", 4}}, [](int n) { return colored_jones_torus(4, n); });
    CHECK(stabilization_report(g4, 8).tail == false_theta(2, 7));
}

TEST_CASE("tail products")
{
    const int N = 30;
    const QSeries unit1 = poch_inf(2, N), unit23 = inv_poch_series(1, 1, N);
    const QSeries t = lambda_series(N) * poch_inf(2, N);
    CHECK(tail_product_1(unit1, t, N) == t);
    CHECK(tail_product_1(t, unit1, N) == t);
    CHECK(tail_product_23(unit23, t, N) == t);
    CHECK(tail_product_1(unit1, unit1, N) == poch_inf(2, N));
    CHECK(tail_product_23(poch_inf(1, N), poch_inf(2, N), N) == poch_inf(1, N) * poch_inf(1, N));
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int k = 0; k < 10; ++k) {
        std::vector<mpq_class> a(N + 1), b(N + 1);
        for (int i = 0; i <= N; ++i) a[i] = d(rng), b[i] = d(rng);
        a[0] = b[0] = 1;
        const QSeries x(0, a), y(0, b);
        CHECK(tail_product_1(x, y, N) == tail_product_1(y, x, N));
        CHECK(tail_product_23(x, y, N) == tail_product_23(y, x, N));
    }
}

TEST_CASE("graph family tails")
{
    const int N = 30;
    const QSeries lam = lambda_series(N);
    CHECK(graph_family_tail("theta", {}, N) == poch_inf(2, N));
    CHECK(graph_family_tail("tet_2n", {}, N) == lam * poch_inf(2, N));
    CHECK(graph_family_tail("G_m", {{"m", 0}}, N) == poch_inf(1, N));
    CHECK(graph_family_tail("G_m", {{"m", 4}}, N) == lam.pow(4) * poch_inf(1, N));
    CHECK(graph_family_tail("inadequate_chain", {{"m", 2}}, N) == poch_inf(2, N) * poch_inf(1, N) * poch_inf(1, N));
    CHECK(graph_family_tail("chain", {{"odd", 1}, {"k", 1}}, N) == false_theta(2, N));
    CHECK(graph_family_tail("chain", {{"odd", 0}, {"k", 3}}, N) == theta_f(3, N));
    CHECK(graph_family_tail("G_kl", {{"k", 1}, {"l", 2}, {"minus", 1}}, N) == false_theta(2, N) * theta_f(3, N));
    CHECK_FALSE(graph_family_tail("G_kl", {{"k", 1}, {"l", 2}}, N) == false_theta(2, N) * theta_f(3, N));
    CHECK_THROWS_AS(graph_family_tail("G_m", {}, N), domain_error);
    CHECK_THROWS_AS(graph_family_tail("nope", {}, N), domain_error);
}
