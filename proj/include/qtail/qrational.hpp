#pragma once

// Exact elements of Q(v) whose denominators are products of quantum
// integers. Every closed-form skein quantity here has that shape: the
// Jones-Wenzl coefficients, theta and tetrahedron values, bubble
// coefficients and colored Jones ratios.

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "qtail/errors.hpp"
#include "qtail/laurent.hpp"
#include "qtail/quantum.hpp"

namespace qtail {

// prod_j [j]^e_j, keyed by j >= 2.
class QDen
{
public:
    QDen() = default;

    static QDen qint(int j, int e = 1)
    {
        QDen d;
        d.mul_qint(j, e);
        return d;
    }

    void mul_qint(int j, int e = 1)
    {
        if (j <= 0) throw domain_error("QDen: [j] with j <= 0 is not invertible");
        if (j == 1 || e == 0) return;
        int &x = exps_[j];
        x += e;
        if (x < 0) throw consistency_error("QDen: negative exponent");
        if (x == 0) exps_.erase(j);
    }

    const std::map<int, int> &exponents() const noexcept { return exps_; }
    bool is_one() const noexcept { return exps_.empty(); }

    VLaurent expand() const
    {
        VLaurent r(1);
        for (auto &[j, e] : exps_) r *= quantum_int(j).pow(static_cast<unsigned>(e));
        return r;
    }

    friend QDen operator*(QDen a, const QDen &b)
    {
        for (auto &[j, e] : b.exps_) a.mul_qint(j, e);
        return a;
    }

    // Least common multiple in the multiset sense.
    static QDen lcm(const QDen &a, const QDen &b)
    {
        QDen r = a;
        for (auto &[j, e] : b.exps_) {
            int cur = r.exps_.count(j) ? r.exps_.at(j) : 0;
            if (e > cur) r.mul_qint(j, e - cur);
        }
        return r;
    }

    // a / b for b dividing a (multiset sense).
    static QDen quotient(const QDen &a, const QDen &b)
    {
        QDen r = a;
        for (auto &[j, e] : b.exps_) r.mul_qint(j, -e);
        return r;
    }

    friend bool operator==(const QDen &a, const QDen &b) { return a.exps_ == b.exps_; }

private:
    std::map<int, int> exps_;
};

// Writes p = c * v^e * prod [j]^(e_j) when possible (greedy trial division
// from the largest admissible j down).
inline std::optional<std::pair<VLaurent, QDen>> factor_quantum_ints(VLaurent p)
{
    if (p.is_zero()) return std::nullopt;
    QDen f;
    for (int j = (p.max_exponent() - p.min_exponent()) / 4 + 1; j >= 2; --j) {
        const VLaurent qj = quantum_int(j);
        while (p.max_exponent() - p.min_exponent() >= 4 * (j - 1)) {
            auto quo = VLaurent::exact_div(p, qj);
            if (!quo) break;
            p = std::move(*quo);
            f.mul_qint(j);
        }
    }
    if (!p.is_monomial()) return std::nullopt;
    return std::make_pair(std::move(p), std::move(f));
}

class VRational
{
public:
    VRational() = default;
    VRational(VLaurent num) : num_(std::move(num)) {}
    VRational(long c) : num_(c) {}
    VRational(int c) : num_(c) {}
    VRational(const mpq_class &c) : num_(c) {}
    VRational(VLaurent num, QDen den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

    const VLaurent &numerator() const noexcept { return num_; }
    const QDen &denominator() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }

    // The value as a Laurent polynomial, if the denominator cancels.
    std::optional<VLaurent> as_laurent() const
    {
        if (den_.is_one()) return num_;
        auto q = VLaurent::exact_div(num_, den_.expand());
        return q;
    }

    VLaurent laurent_or_throw(const char *what) const
    {
        auto p = as_laurent();
        if (!p) throw consistency_error(std::string(what) + ": division left a nonzero remainder");
        return *p;
    }

    VRational operator-() const
    {
        VRational r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend VRational operator+(const VRational &a, const VRational &b) { return combine(a, b, false); }
    friend VRational operator-(const VRational &a, const VRational &b) { return combine(a, b, true); }
    friend VRational operator*(const VRational &a, const VRational &b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        return VRational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend VRational operator/(const VRational &a, const VRational &b)
    {
        if (b.is_zero()) throw domain_error("VRational: division by zero");
        auto f = factor_quantum_ints(b.num_);
        if (!f)
            throw representation_error("VRational: divisor is not a product of quantum integers: " +
                                       b.num_.to_string());
        auto &[unit, qints] = *f;
        VLaurent num = a.num_ * b.den_.expand();
        num = num.shifted(-unit.min_exponent());
        num *= mpq_class(1) / unit.lowest_coeff();
        return VRational(std::move(num), a.den_ * qints);
    }
    VRational &operator+=(const VRational &o) { return *this = *this + o; }
    VRational &operator-=(const VRational &o) { return *this = *this - o; }
    VRational &operator*=(const VRational &o) { return *this = *this * o; }
    VRational &operator/=(const VRational &o) { return *this = *this / o; }

    VRational div_qint(int j, int e = 1) const
    {
        QDen d = den_;
        d.mul_qint(j, e);
        return VRational(num_, std::move(d));
    }

    VRational pow(unsigned k) const
    {
        VRational r(1), base = *this;
        while (k) {
            if (k & 1u) r *= base;
            k >>= 1u;
            if (k) base *= base;
        }
        return r;
    }

    friend bool operator==(const VRational &a, const VRational &b)
    {
        if (a.den_ == b.den_) return a.num_ == b.num_;
        QDen l = QDen::lcm(a.den_, b.den_);
        return a.num_ * QDen::quotient(l, a.den_).expand() == b.num_ * QDen::quotient(l, b.den_).expand();
    }
    friend bool operator!=(const VRational &a, const VRational &b) { return !(a == b); }

    std::string to_string() const
    {
        if (den_.is_one()) return num_.to_string();
        std::string s = "(" + num_.to_string() + ")/(";
        bool first = true;
        for (auto &[j, e] : den_.exponents()) {
            if (!first) s += "*";
            first = false;
            s += "[" + std::to_string(j) + "]";
            if (e != 1) s += "^" + std::to_string(e);
        }
        return s + ")";
    }

    friend std::ostream &operator<<(std::ostream &os, const VRational &r) { return os << r.to_string(); }

private:
    static VRational combine(const VRational &a, const VRational &b, bool subtract)
    {
        if (b.is_zero()) return a;
        if (a.is_zero()) return subtract ? -b : b;
        if (a.den_ == b.den_) return VRational(subtract ? a.num_ - b.num_ : a.num_ + b.num_, a.den_);
        QDen l = QDen::lcm(a.den_, b.den_);
        VLaurent x = a.num_ * QDen::quotient(l, a.den_).expand();
        VLaurent y = b.num_ * QDen::quotient(l, b.den_).expand();
        return VRational(subtract ? x - y : x + y, std::move(l));
    }

    // Cancels quantum-integer factors of the denominator that divide the
    // numerator exactly.
    void reduce()
    {
        if (num_.is_zero()) {
            den_ = QDen{};
            return;
        }
        auto exps = den_.exponents();
        for (auto it = exps.rbegin(); it != exps.rend(); ++it) {
            const int j = it->first;
            const VLaurent qj = quantum_int(j);
            for (int e = it->second; e > 0; --e) {
                if (num_.max_exponent() - num_.min_exponent() < 4 * (j - 1)) break;
                auto quo = VLaurent::exact_div(num_, qj);
                if (!quo) break;
                num_ = std::move(*quo);
                den_.mul_qint(j, -1);
            }
        }
    }

    VLaurent num_;
    QDen den_;
};

inline VRational qint_ratio(int num_j, int den_j) { return VRational(quantum_int(num_j)).div_qint(den_j); }

} // namespace qtail
