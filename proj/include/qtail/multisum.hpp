#pragma once

#include <functional>
#include <vector>

#include "qtail/errors.hpp"
#include "qtail/qseries.hpp"

namespace qtail {

// Sum over l_1..l_r >= 0 of
//   q^(sum_j i_j (i_j + 1)) / ((q;q)_{l_r}^last_power * prod_{j<r} (q;q)_{l_j}),
// with i_j = l_j + ... + l_r, through q^N. Each l_j(l_j+1) is at most the
// exponent, so indices beyond that bound cannot reach q^N.
inline QSeries nested_multisum(int r, int last_power, int N)
{
    if (r < 0 || N < 0 || last_power < 1) throw domain_error("nested_multisum: bad arguments");
    if (r == 0) return QSeries::one(N);
    int lmax = 0;
    while ((lmax + 1) * (lmax + 2) <= N) ++lmax;
    std::vector<QSeries> inv;
    for (int l = 0; l <= lmax; ++l) inv.push_back(inv_poch_series(1, l, N));

    std::vector<mpq_class> acc(static_cast<std::size_t>(N) + 1);
    // j counts down from r; `below` is i_{j+1}.
    std::function<void(int, int, int, const QSeries &)> rec = [&](int j, int below, int exponent, const QSeries &prod) {
        for (int l = 0; l <= lmax; ++l) {
            const int i = l + below;
            const int e = exponent + i * (i + 1);
            if (e > N) break;
            QSeries p = prod * inv[static_cast<std::size_t>(l)];
            if (j == r)
                for (int t = 1; t < last_power; ++t) p *= inv[static_cast<std::size_t>(l)];
            if (j == 1) {
                for (int k = 0; k + e <= N; ++k) acc[static_cast<std::size_t>(k + e)] += p.coeff(k);
            } else {
                rec(j - 1, i, e, p);
            }
        }
    };
    rec(r, 0, 0, QSeries::one(N));
    return QSeries(0, std::move(acc));
}

} // namespace qtail
