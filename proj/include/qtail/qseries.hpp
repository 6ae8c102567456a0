#pragma once

// Truncated formal power series in q with exact rational coefficients.
//
// A QSeries knows the coefficients of q^(shift + j) for 0 <= j < order and
// nothing beyond. Results of arithmetic keep exactly the precision the
// operands justify, so agreement past the computed order can never be
// reported by accident.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qtail/errors.hpp"
#include "qtail/laurent.hpp"
#include "qtail/qrational.hpp"

namespace qtail {

class QSeries
{
public:
    QSeries() = default;

    // Coefficient j multiplies q^(shift + j + quarter/4). Leading zeros are
    // stripped unless the series is zero to its full precision.
    QSeries(int shift, std::vector<mpq_class> coeffs, int quarter = 0)
        : shift_(shift), quarter_(quarter), c_(std::move(coeffs))
    {
        if (quarter_ < 0 || quarter_ > 3) throw domain_error("QSeries: quarter shift must be in [0, 3]");
        strip();
    }

    static QSeries one(int N) { return monomial(0, N); }

    // c * q^k, known through q^(k + N).
    static QSeries monomial(int k, int N, const mpq_class &c = 1)
    {
        std::vector<mpq_class> v(static_cast<std::size_t>(N) + 1);
        v[0] = c;
        return QSeries(k, std::move(v));
    }

    // Zero known on [shift, shift + order).
    static QSeries zero(int order, int shift = 0)
    {
        return QSeries(shift, std::vector<mpq_class>(static_cast<std::size_t>(order)));
    }

    int shift() const noexcept { return shift_; }
    int quarter() const noexcept { return quarter_; }
    int order() const noexcept { return static_cast<int>(c_.size()); }
    // First absolute exponent whose coefficient is unknown.
    int precision_end() const noexcept { return shift_ + order(); }
    const std::vector<mpq_class> &coeffs() const noexcept { return c_; }

    bool is_zero() const
    {
        return std::all_of(c_.begin(), c_.end(), [](const mpq_class &x) { return x == 0; });
    }

    // Coefficient of q^k (absolute exponent); precision_error past the order.
    mpq_class coeff(int k) const
    {
        if (k >= precision_end()) throw precision_error("QSeries: coefficient beyond computed order");
        if (k < shift_) return 0;
        return c_[static_cast<std::size_t>(k - shift_)];
    }

    bool is_integral() const
    {
        return std::all_of(c_.begin(), c_.end(), [](const mpq_class &x) { return x.get_den() == 1; });
    }

    // Keeps at most `order` coefficients.
    QSeries truncated(int order) const
    {
        if (order >= this->order()) return *this;
        QSeries r = *this;
        r.c_.resize(static_cast<std::size_t>(std::max(order, 0)));
        return r;
    }

    // Multiplies by q^k.
    QSeries shifted(int k) const
    {
        QSeries r = *this;
        r.shift_ += k;
        return r;
    }

    QSeries operator-() const
    {
        QSeries r = *this;
        for (auto &x : r.c_) x = -x;
        return r;
    }

    QSeries &operator*=(const mpq_class &s)
    {
        for (auto &x : c_) x *= s;
        return *this;
    }

    friend QSeries operator+(const QSeries &a, const QSeries &b) { return add(a, b, false); }
    friend QSeries operator-(const QSeries &a, const QSeries &b) { return add(a, b, true); }
    friend QSeries operator*(const QSeries &a, const QSeries &b) { return mul(a, b); }
    friend QSeries operator/(const QSeries &a, const QSeries &b) { return div(a, b); }
    friend QSeries operator*(QSeries a, const mpq_class &s) { return a *= s; }
    QSeries &operator+=(const QSeries &o) { return *this = *this + o; }
    QSeries &operator-=(const QSeries &o) { return *this = *this - o; }
    QSeries &operator*=(const QSeries &o) { return *this = *this * o; }
    QSeries &operator/=(const QSeries &o) { return *this = *this / o; }

    QSeries pow(unsigned k) const
    {
        QSeries r = one(order() - 1), base = *this;
        while (k) {
            if (k & 1u) r *= base;
            k >>= 1u;
            if (k) base *= base;
        }
        return r;
    }

    // Structural equality: same shift, quarter and coefficients at the same
    // order. Series with a fractional q-shift are refused.
    friend bool operator==(const QSeries &a, const QSeries &b)
    {
        if (a.quarter_ != 0 || b.quarter_ != 0)
            throw representation_error("QSeries: comparison of series with a fractional q-shift");
        return a.shift_ == b.shift_ && a.c_ == b.c_;
    }
    friend bool operator!=(const QSeries &a, const QSeries &b) { return !(a == b); }

    // Index of the first absolute exponent below `end` where a and b differ,
    // or nullopt when they agree there. Requires both to be known below `end`.
    static std::optional<int> first_difference(const QSeries &a, const QSeries &b, int end)
    {
        if (a.quarter_ != 0 || b.quarter_ != 0)
            throw representation_error("QSeries: comparison of series with a fractional q-shift");
        if (end > a.precision_end() || end > b.precision_end())
            throw precision_error("QSeries: comparison beyond computed order");
        for (int k = std::min(a.shift_, b.shift_); k < end; ++k)
            if (a.coeff(k) != b.coeff(k)) return k;
        return std::nullopt;
    }

    std::string to_string(bool show_order = true) const
    {
        std::ostringstream os;
        bool first = true;
        std::string frac = quarter_ ? "+" + std::to_string(quarter_) + "/4" : "";
        for (int j = 0; j < order(); ++j) {
            const auto &c = c_[static_cast<std::size_t>(j)];
            if (c == 0) continue;
            const int e = shift_ + j;
            mpq_class mag = abs(c);
            if (first)
                os << (c < 0 ? "-" : "");
            else
                os << (c < 0 ? " - " : " + ");
            first = false;
            const bool pure_const = (e == 0 && frac.empty());
            if (mag != 1 || pure_const) os << mag;
            if (!pure_const) {
                if (mag != 1) os << "*";
                os << "q";
                if (!frac.empty())
                    os << "^(" << e << frac << ")";
                else if (e != 1)
                    os << "^" << e;
            }
        }
        if (first) os << "0";
        if (show_order) os << " + O(q^" << precision_end() << frac << ")";
        return os.str();
    }

    friend std::ostream &operator<<(std::ostream &os, const QSeries &s) { return os << s.to_string(); }

private:
    void strip()
    {
        auto first = std::find_if(c_.begin(), c_.end(), [](const mpq_class &x) { return x != 0; });
        if (first == c_.end() || first == c_.begin()) return;
        const auto k = first - c_.begin();
        c_.erase(c_.begin(), first);
        shift_ += static_cast<int>(k);
    }

    static void require_same_quarter(const QSeries &a, const QSeries &b)
    {
        if (a.quarter_ != b.quarter_)
            throw representation_error("QSeries: adding series whose q-exponents differ by a fractional power");
    }

    static QSeries add(const QSeries &a, const QSeries &b, bool subtract)
    {
        require_same_quarter(a, b);
        const int lo = std::min(a.shift_, b.shift_);
        const int hi = std::min(a.precision_end(), b.precision_end());
        std::vector<mpq_class> v(static_cast<std::size_t>(std::max(hi - lo, 0)));
        for (int k = lo; k < hi; ++k) {
            mpq_class x = (k >= a.shift_) ? a.c_[static_cast<std::size_t>(k - a.shift_)] : mpq_class(0);
            if (k >= b.shift_) {
                const auto &y = b.c_[static_cast<std::size_t>(k - b.shift_)];
                if (subtract)
                    x -= y;
                else
                    x += y;
            }
            v[static_cast<std::size_t>(k - lo)] = std::move(x);
        }
        return QSeries(lo, std::move(v), a.quarter_);
    }

    static std::pair<int, int> combine_shift(int shift, int quarter)
    {
        int carry = quarter >= 0 ? quarter / 4 : -((3 - quarter) / 4);
        return {shift + carry, quarter - 4 * carry};
    }

    static QSeries mul(const QSeries &a, const QSeries &b)
    {
        const int n = std::min(a.order(), b.order());
        std::vector<mpq_class> v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const auto &x = a.c_[static_cast<std::size_t>(i)];
            if (x == 0) continue;
            for (int j = 0; i + j < n; ++j) {
                const auto &y = b.c_[static_cast<std::size_t>(j)];
                if (y != 0) v[static_cast<std::size_t>(i + j)] += x * y;
            }
        }
        auto [s, qr] = combine_shift(a.shift_ + b.shift_, a.quarter_ + b.quarter_);
        return QSeries(s, std::move(v), qr);
    }

    static QSeries div(const QSeries &a, const QSeries &b)
    {
        if (b.is_zero()) throw domain_error("QSeries: division by a series that is zero to its order");
        const int n = std::min(a.order(), b.order());
        std::vector<mpq_class> v(static_cast<std::size_t>(n));
        const mpq_class inv = mpq_class(1) / b.c_[0];
        for (int k = 0; k < n; ++k) {
            mpq_class acc = a.c_[static_cast<std::size_t>(k)];
            for (int j = 1; j <= k; ++j) {
                const auto &y = b.c_[static_cast<std::size_t>(j)];
                if (y != 0) acc -= y * v[static_cast<std::size_t>(k - j)];
            }
            v[static_cast<std::size_t>(k)] = acc * inv;
        }
        auto [s, qr] = combine_shift(a.shift_ - b.shift_, a.quarter_ - b.quarter_);
        return QSeries(s, std::move(v), qr);
    }

    int shift_ = 0;
    int quarter_ = 0;
    std::vector<mpq_class> c_;
};

// Expands a v-Laurent polynomial as a q-series, keeping coefficients of
// q^shift .. q^(shift + N). All exponents must agree modulo 4; a minimal
// exponent that is not a multiple of 4 is kept as a fractional q-shift.
inline QSeries to_q_series(const VLaurent &p, int N)
{
    if (p.is_zero()) throw domain_error("to_q_series: zero input");
    if (N < 0) throw domain_error("to_q_series: negative order");
    const int e0 = p.min_exponent();
    std::vector<mpq_class> v(static_cast<std::size_t>(N) + 1);
    for (auto &[e, c] : p.terms()) {
        if ((e - e0) % 4 != 0)
            throw representation_error("to_q_series: relative exponent " + std::to_string(e - e0) +
                                       " is not an integral power of q");
        const int j = (e - e0) / 4;
        if (j <= N) v[static_cast<std::size_t>(j)] = c;
    }
    const int quarter = ((e0 % 4) + 4) % 4;
    return QSeries((e0 - quarter) / 4, std::move(v), quarter);
}

inline QSeries to_q_series(const VRational &r, int N)
{
    if (r.is_zero()) throw domain_error("to_q_series: zero input");
    return to_q_series(r.numerator(), N) / to_q_series(r.denominator().expand(), N);
}

// (q^c; q^step)_inf through q^N. Factors with exponent above N are
// congruent to 1 and are skipped.
inline QSeries poch_inf(int c, int N, int step = 1)
{
    if (c <= 0) throw domain_error("poch_inf: divergent product (c <= 0)");
    if (step <= 0) throw domain_error("poch_inf: step must be positive");
    if (N < 0) throw domain_error("poch_inf: negative order");
    std::vector<mpq_class> v(static_cast<std::size_t>(N) + 1);
    v[0] = 1;
    for (int e = c; e <= N; e += step)
        for (int k = N; k >= e; --k) v[static_cast<std::size_t>(k)] -= v[static_cast<std::size_t>(k - e)];
    return QSeries(0, std::move(v));
}

// (q^c; q)_n as a series through q^N.
inline QSeries poch_series(int c, int n, int N)
{
    if (n < 0) throw domain_error("poch_series: negative length");
    std::vector<mpq_class> v(static_cast<std::size_t>(N) + 1);
    v[0] = 1;
    for (int j = 0; j < n; ++j) {
        const int e = c + j;
        if (e <= 0) throw domain_error("poch_series: factor with non-positive exponent");
        if (e > N) break;
        for (int k = N; k >= e; --k) v[static_cast<std::size_t>(k)] -= v[static_cast<std::size_t>(k - e)];
    }
    return QSeries(0, std::move(v));
}

// 1 / (q^c; q)_n through q^N, by repeated geometric-series multiplication.
inline QSeries inv_poch_series(int c, int n, int N)
{
    if (n < 0) throw domain_error("inv_poch_series: negative length");
    std::vector<mpq_class> v(static_cast<std::size_t>(N) + 1);
    v[0] = 1;
    for (int j = 0; j < n; ++j) {
        const int e = c + j;
        if (e <= 0) throw domain_error("inv_poch_series: factor with non-positive exponent");
        if (e > N) break;
        for (int k = e; k <= N; ++k) v[static_cast<std::size_t>(k)] += v[static_cast<std::size_t>(k - e)];
    }
    return QSeries(0, std::move(v));
}

} // namespace qtail
