#pragma once

// Sparse Laurent polynomials with exact coefficients.
//
// The universal value type of skein evaluations is laurent_poly<mpq_class>
// in the variable v, where A = v and q = v^4.

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

namespace qtail {

template <class Coeff>
class laurent_poly
{
public:
    using coeff_type = Coeff;
    using term_type = std::pair<int, Coeff>;

    laurent_poly() = default;

    // Constant polynomial.
    laurent_poly(const Coeff &c)
    {
        if (c != 0) terms_.emplace_back(0, c);
    }
    laurent_poly(long c) : laurent_poly(Coeff(c)) {}
    laurent_poly(int c) : laurent_poly(Coeff(c)) {}

    static laurent_poly monomial(int exponent, const Coeff &c = Coeff(1))
    {
        laurent_poly p;
        if (c != 0) p.terms_.emplace_back(exponent, c);
        return p;
    }

    // Builds from arbitrary (exponent, coefficient) pairs; duplicates are summed.
    static laurent_poly from_terms(std::vector<term_type> terms)
    {
        std::sort(terms.begin(), terms.end(),
                  [](const term_type &a, const term_type &b) { return a.first < b.first; });
        laurent_poly p;
        for (auto &t : terms) {
            if (!p.terms_.empty() && p.terms_.back().first == t.first)
                p.terms_.back().second += t.second;
            else
                p.terms_.push_back(std::move(t));
            if (p.terms_.back().second == 0) p.terms_.pop_back();
        }
        return p;
    }

    const std::vector<term_type> &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    int min_exponent() const
    {
        if (is_zero()) throw domain_error("min_exponent of the zero polynomial");
        return terms_.front().first;
    }
    int max_exponent() const
    {
        if (is_zero()) throw domain_error("max_exponent of the zero polynomial");
        return terms_.back().first;
    }
    const Coeff &lowest_coeff() const
    {
        if (is_zero()) throw domain_error("lowest_coeff of the zero polynomial");
        return terms_.front().second;
    }

    Coeff coeff(int exponent) const
    {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                                   [](const term_type &t, int e) { return t.first < e; });
        if (it != terms_.end() && it->first == exponent) return it->second;
        return Coeff(0);
    }

    bool is_monomial() const noexcept { return terms_.size() == 1; }

    // Multiply by v^k.
    laurent_poly shifted(int k) const
    {
        laurent_poly r = *this;
        for (auto &t : r.terms_) t.first += k;
        return r;
    }

    // Substitute v -> v^k (k may be negative).
    laurent_poly substitute_power(int k) const
    {
        if (k == 0) throw domain_error("substitute_power with k = 0");
        std::vector<term_type> t;
        t.reserve(terms_.size());
        for (auto &x : terms_) t.emplace_back(x.first * k, x.second);
        return from_terms(std::move(t));
    }

    laurent_poly operator-() const
    {
        laurent_poly r = *this;
        for (auto &t : r.terms_) t.second = -t.second;
        return r;
    }

    laurent_poly &operator+=(const laurent_poly &o) { return *this = add(*this, o, false); }
    laurent_poly &operator-=(const laurent_poly &o) { return *this = add(*this, o, true); }
    laurent_poly &operator*=(const laurent_poly &o) { return *this = mul(*this, o); }
    laurent_poly &operator*=(const Coeff &c)
    {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto &t : terms_) t.second *= c;
        return *this;
    }

    friend laurent_poly operator+(const laurent_poly &a, const laurent_poly &b) { return add(a, b, false); }
    friend laurent_poly operator-(const laurent_poly &a, const laurent_poly &b) { return add(a, b, true); }
    friend laurent_poly operator*(const laurent_poly &a, const laurent_poly &b) { return mul(a, b); }
    friend laurent_poly operator*(laurent_poly a, const Coeff &c) { return a *= c; }
    friend laurent_poly operator*(const Coeff &c, laurent_poly a) { return a *= c; }

    friend bool operator==(const laurent_poly &a, const laurent_poly &b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const laurent_poly &a, const laurent_poly &b) { return !(a == b); }

    laurent_poly pow(unsigned k) const
    {
        laurent_poly result(Coeff(1)), base = *this;
        while (k) {
            if (k & 1u) result *= base;
            k >>= 1u;
            if (k) base *= base;
        }
        return result;
    }

    // Exact quotient a / b, or nullopt when b does not divide a in the
    // Laurent polynomial ring.
    static std::optional<laurent_poly> exact_div(const laurent_poly &a, const laurent_poly &b)
    {
        if (b.is_zero()) throw domain_error("division by the zero polynomial");
        if (a.is_zero()) return laurent_poly{};
        if (b.is_monomial()) {
            laurent_poly r = a.shifted(-b.min_exponent());
            Coeff inv = Coeff(1) / b.lowest_coeff();
            r *= inv;
            return r;
        }
        const int amin = a.min_exponent(), bmin = b.min_exponent();
        const int adeg = a.max_exponent() - amin, bdeg = b.max_exponent() - bmin;
        if (adeg < bdeg) return std::nullopt;
        std::vector<Coeff> num(static_cast<std::size_t>(adeg) + 1);
        for (auto &t : a.terms_) num[static_cast<std::size_t>(t.first - amin)] = t.second;
        std::vector<std::pair<int, Coeff>> den;
        den.reserve(b.terms_.size());
        for (auto &t : b.terms_) den.emplace_back(t.first - bmin, t.second);
        const Coeff &lead = den.back().second;
        const bool unit_lead = (lead == 1);
        std::vector<term_type> quotient;
        for (int d = adeg; d >= bdeg; --d) {
            auto &c = num[static_cast<std::size_t>(d)];
            if (c == 0) continue;
            Coeff qc = unit_lead ? Coeff(c) : Coeff(c / lead);
            const int qe = d - bdeg;
            for (auto &t : den) num[static_cast<std::size_t>(qe + t.first)] -= qc * t.second;
            quotient.emplace_back(qe + amin - bmin, std::move(qc));
        }
        for (int d = 0; d < bdeg; ++d)
            if (num[static_cast<std::size_t>(d)] != 0) return std::nullopt;
        return from_terms(std::move(quotient));
    }

    std::string to_string(const std::string &var = "v") const
    {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto &[e, c] : terms_) {
            Coeff mag = c < 0 ? Coeff(-c) : c;
            if (first) {
                if (c < 0) os << "-";
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            first = false;
            const bool unit = (mag == 1);
            if (!unit || e == 0) os << mag;
            if (e != 0) {
                if (!unit) os << "*";
                os << var;
                if (e != 1) os << "^" << e;
            }
        }
        return os.str();
    }

    friend std::ostream &operator<<(std::ostream &os, const laurent_poly &p) { return os << p.to_string(); }

private:
    static laurent_poly add(const laurent_poly &a, const laurent_poly &b, bool subtract)
    {
        laurent_poly r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto i = a.terms_.begin(), j = b.terms_.begin();
        while (i != a.terms_.end() || j != b.terms_.end()) {
            if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
                r.terms_.push_back(*i++);
            } else if (i == a.terms_.end() || j->first < i->first) {
                r.terms_.emplace_back(j->first, subtract ? Coeff(-j->second) : j->second);
                ++j;
            } else {
                Coeff c = subtract ? Coeff(i->second - j->second) : Coeff(i->second + j->second);
                if (c != 0) r.terms_.emplace_back(i->first, std::move(c));
                ++i;
                ++j;
            }
        }
        return r;
    }

    static laurent_poly mul(const laurent_poly &a, const laurent_poly &b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.is_monomial() || b.is_monomial()) {
            const laurent_poly &m = a.is_monomial() ? a : b;
            const laurent_poly &o = a.is_monomial() ? b : a;
            laurent_poly r = o.shifted(m.min_exponent());
            r *= m.lowest_coeff();
            return r;
        }
        const int lo = a.min_exponent() + b.min_exponent();
        const int hi = a.max_exponent() + b.max_exponent();
        std::vector<Coeff> acc(static_cast<std::size_t>(hi - lo) + 1);
        std::vector<char> touched(acc.size(), 0);
        for (auto &x : a.terms_)
            for (auto &y : b.terms_) {
                auto k = static_cast<std::size_t>(x.first + y.first - lo);
                if (touched[k]) {
                    acc[k] += x.second * y.second;
                } else {
                    acc[k] = x.second * y.second;
                    touched[k] = 1;
                }
            }
        laurent_poly r;
        for (std::size_t k = 0; k < acc.size(); ++k)
            if (touched[k] && acc[k] != 0) r.terms_.emplace_back(static_cast<int>(k) + lo, std::move(acc[k]));
        return r;
    }

    std::vector<term_type> terms_;
};

// Laurent polynomial in v = A = q^(1/4) with rational coefficients.
using VLaurent = laurent_poly<mpq_class>;

} // namespace qtail
