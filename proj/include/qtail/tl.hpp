#pragma once

// Crossingless matchings and the Temperley-Lieb algebra TL_n over Q(v).
//
// Boundary indices: top point i is i, bottom point i is n + i (both
// numbered left to right). Around the boundary circle the order is top
// 0..n-1 followed by bottom n-1..0; the canonical word writes '(' at a
// point whose partner comes later on that circle and ')' otherwise.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "qtail/errors.hpp"
#include "qtail/qrational.hpp"
#include "qtail/quantum.hpp"

namespace qtail {

class Matching
{
public:
    Matching() = default;

    // partner[p] for p in 0..2n-1; validated for involution and planarity.
    explicit Matching(std::vector<int> partner)
    {
        if (partner.size() % 2) throw domain_error("Matching: odd number of boundary points");
        n_ = static_cast<int>(partner.size() / 2);
        partner_.assign(partner.begin(), partner.end());
        const int m = 2 * n_;
        for (int p = 0; p < m; ++p) {
            const int x = partner[static_cast<std::size_t>(p)];
            if (x < 0 || x >= m || x == p || partner[static_cast<std::size_t>(x)] != p)
                throw domain_error("Matching: partner map is not a fixed-point-free involution");
        }
        word_ = make_word();
        if (!noncrossing()) throw domain_error("Matching: pairs interleave");
    }

    static Matching identity(int n)
    {
        std::vector<int> p(static_cast<std::size_t>(2 * n));
        for (int i = 0; i < n; ++i) {
            p[static_cast<std::size_t>(i)] = n + i;
            p[static_cast<std::size_t>(n + i)] = i;
        }
        return Matching(std::move(p));
    }

    // Cup-cap generator e_i, 1 <= i <= n-1: joins points i-1 and i on both sides.
    static Matching cup_cap(int n, int i)
    {
        if (i < 1 || i >= n) throw domain_error("cup_cap: index out of range");
        std::vector<int> p(static_cast<std::size_t>(2 * n));
        for (int j = 0; j < n; ++j) {
            p[static_cast<std::size_t>(j)] = n + j;
            p[static_cast<std::size_t>(n + j)] = j;
        }
        auto link = [&](int a, int b) {
            p[static_cast<std::size_t>(a)] = b;
            p[static_cast<std::size_t>(b)] = a;
        };
        link(i - 1, i);
        link(n + i - 1, n + i);
        return Matching(std::move(p));
    }

    // On 2n strands: n nested caps on the top and n nested cups on the bottom.
    static Matching nested_turnback(int n)
    {
        const int m = 2 * n;
        std::vector<int> p(static_cast<std::size_t>(2 * m));
        for (int j = 0; j < n; ++j) {
            const int a = n - 1 - j, b = n + j;
            p[static_cast<std::size_t>(a)] = b;
            p[static_cast<std::size_t>(b)] = a;
            p[static_cast<std::size_t>(m + a)] = m + b;
            p[static_cast<std::size_t>(m + b)] = m + a;
        }
        return Matching(std::move(p));
    }

    static Matching from_word(int n, const std::string &word)
    {
        if (static_cast<int>(word.size()) != 2 * n || !balanced(word))
            throw domain_error("Matching: malformed word '" + word + "'");
        std::vector<int> p(word.size());
        std::vector<int> stack;
        for (int c = 0; c < 2 * n; ++c) {
            if (word[static_cast<std::size_t>(c)] == '(') {
                stack.push_back(c);
            } else {
                const int a = point_at(n, stack.back()), b = point_at(n, c);
                stack.pop_back();
                p[static_cast<std::size_t>(a)] = b;
                p[static_cast<std::size_t>(b)] = a;
            }
        }
        return Matching(std::move(p));
    }

    // All crossingless matchings on 2n points, in canonical order.
    static std::vector<Matching> enumerate(int n)
    {
        std::vector<Matching> out;
        std::string w;
        std::function<void(int, int)> rec = [&](int open, int close) {
            if (open == n && close == n) {
                out.push_back(from_word(n, w));
                return;
            }
            if (open < n) {
                w.push_back('(');
                rec(open + 1, close);
                w.pop_back();
            }
            if (close < open) {
                w.push_back(')');
                rec(open, close + 1);
                w.pop_back();
            }
        };
        rec(0, 0);
        std::sort(out.begin(), out.end());
        return out;
    }

    int n() const noexcept { return n_; }
    int partner(int p) const { return partner_.at(static_cast<std::size_t>(p)); }
    const std::string &word() const noexcept { return word_; }
    bool is_identity() const { return *this == identity(n_); }

    // Side by side: a on the left, b on the right.
    friend Matching tensor(const Matching &a, const Matching &b)
    {
        const int n = a.n_ + b.n_;
        std::vector<int> p(static_cast<std::size_t>(2 * n));
        auto map_a = [&](int x) { return x < a.n_ ? x : n + (x - a.n_); };
        auto map_b = [&](int x) { return x < b.n_ ? a.n_ + x : n + a.n_ + (x - b.n_); };
        for (int x = 0; x < 2 * a.n_; ++x) p[static_cast<std::size_t>(map_a(x))] = map_a(a.partner(x));
        for (int x = 0; x < 2 * b.n_; ++x) p[static_cast<std::size_t>(map_b(x))] = map_b(b.partner(x));
        return Matching(std::move(p));
    }

    friend bool operator==(const Matching &a, const Matching &b) { return a.n_ == b.n_ && a.word_ == b.word_; }
    friend std::strong_ordering operator<=>(const Matching &a, const Matching &b)
    {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return a.word_.compare(b.word_) <=> 0;
    }

private:
    // Boundary point at circle position c.
    static int point_at(int n, int c) { return c < n ? c : n + (2 * n - 1 - c); }
    int circle_pos(int p) const { return p < n_ ? p : 2 * n_ - 1 - (p - n_); }

    std::string make_word() const
    {
        std::string w(static_cast<std::size_t>(2 * n_), '(');
        for (int c = 0; c < 2 * n_; ++c) {
            const int p = point_at(n_, c);
            if (circle_pos(partner(p)) < c) w[static_cast<std::size_t>(c)] = ')';
        }
        return w;
    }

    // Pairs are nested iff each ')' closes the most recent unclosed '('.
    bool noncrossing() const
    {
        std::vector<int> stack;
        for (int c = 0; c < 2 * n_; ++c) {
            if (word_[static_cast<std::size_t>(c)] == '(') {
                stack.push_back(c);
            } else {
                if (stack.empty() || circle_pos(partner(point_at(n_, c))) != stack.back()) return false;
                stack.pop_back();
            }
        }
        return stack.empty();
    }

    static bool balanced(const std::string &w)
    {
        int depth = 0;
        for (char ch : w) {
            if (ch == '(') ++depth;
            else if (ch == ')' && --depth < 0) return false;
            else if (ch != ')') return false;
        }
        return depth == 0;
    }

    int n_ = 0;
    std::vector<std::int16_t> partner_;
    std::string word_;
};

inline long catalan(int n)
{
    long c = 1;
    for (int k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
    return c;
}

namespace detail {

// Follows strands through two pairings on the same point set. `inner`
// pairs internal points; `outer` pairs every point. Returns the induced
// pairing on the points not mentioned in `inner` and the number of closed
// loops made only of internal points.
inline std::pair<std::vector<int>, int> trace_strands(const std::vector<int> &outer, const std::vector<int> &inner)
{
    const std::size_t m = outer.size();
    std::vector<int> result(m, -1);
    std::vector<char> seen(m, 0);
    for (std::size_t s = 0; s < m; ++s) {
        if (inner[s] >= 0 || seen[s]) continue;
        int p = static_cast<int>(s);
        seen[s] = 1;
        for (;;) {
            p = outer[static_cast<std::size_t>(p)];
            seen[static_cast<std::size_t>(p)] = 1;
            if (inner[static_cast<std::size_t>(p)] < 0) break;
            p = inner[static_cast<std::size_t>(p)];
            seen[static_cast<std::size_t>(p)] = 1;
        }
        result[s] = p;
        result[static_cast<std::size_t>(p)] = static_cast<int>(s);
    }
    int loops = 0;
    for (std::size_t s = 0; s < m; ++s) {
        if (seen[s]) continue;
        ++loops;
        int p = static_cast<int>(s);
        do {
            seen[static_cast<std::size_t>(p)] = 1;
            p = outer[static_cast<std::size_t>(p)];
            seen[static_cast<std::size_t>(p)] = 1;
            p = inner[static_cast<std::size_t>(p)];
        } while (p != static_cast<int>(s));
    }
    return {std::move(result), loops};
}

} // namespace detail

// a . b with b stacked on top of a.
inline std::pair<Matching, int> match_mul(const Matching &a, const Matching &b)
{
    if (a.n() != b.n()) throw domain_error("match_mul: strand-count mismatch");
    const int n = a.n();
    // Points 0..2n-1 are a's, 2n..4n-1 are b's.
    std::vector<int> outer(static_cast<std::size_t>(4 * n)), inner(static_cast<std::size_t>(4 * n), -1);
    for (int x = 0; x < 2 * n; ++x) {
        outer[static_cast<std::size_t>(x)] = a.partner(x);
        outer[static_cast<std::size_t>(2 * n + x)] = 2 * n + b.partner(x);
    }
    for (int i = 0; i < n; ++i) {
        inner[static_cast<std::size_t>(i)] = 3 * n + i;
        inner[static_cast<std::size_t>(3 * n + i)] = i;
    }
    auto [pairing, loops] = detail::trace_strands(outer, inner);
    // Result top i is b's top i; result bottom i is a's bottom i.
    std::vector<int> p(static_cast<std::size_t>(2 * n));
    auto relabel = [&](int x) { return x >= 2 * n ? x - 2 * n : x; };
    for (int x = 0; x < 4 * n; ++x) {
        if (inner[static_cast<std::size_t>(x)] >= 0) continue;
        p[static_cast<std::size_t>(relabel(x))] = relabel(pairing[static_cast<std::size_t>(x)]);
    }
    return {Matching(std::move(p)), loops};
}

// Closes the rightmost m strands (top n-m+j to bottom n-m+j) around the right side.
inline std::pair<Matching, int> match_partial_trace(const Matching &a, int m)
{
    const int n = a.n();
    if (m < 0 || m > n) throw domain_error("partial trace: strand count out of range");
    std::vector<int> outer(static_cast<std::size_t>(2 * n)), inner(static_cast<std::size_t>(2 * n), -1);
    for (int x = 0; x < 2 * n; ++x) outer[static_cast<std::size_t>(x)] = a.partner(x);
    for (int j = n - m; j < n; ++j) {
        inner[static_cast<std::size_t>(j)] = n + j;
        inner[static_cast<std::size_t>(n + j)] = j;
    }
    auto [pairing, loops] = detail::trace_strands(outer, inner);
    const int r = n - m;
    auto relabel = [&](int x) { return x < n ? x : r + (x - n); };
    std::vector<int> p(static_cast<std::size_t>(2 * r));
    for (int x = 0; x < 2 * n; ++x) {
        if (inner[static_cast<std::size_t>(x)] >= 0) continue;
        p[static_cast<std::size_t>(relabel(x))] = relabel(pairing[static_cast<std::size_t>(x)]);
    }
    return {Matching(std::move(p)), loops};
}

// delta^k, memoized.
inline const VLaurent &loop_power(int k)
{
    static std::mutex mu;
    static std::vector<VLaurent> pw{VLaurent(1)};
    std::lock_guard lk(mu);
    while (static_cast<int>(pw.size()) <= k) pw.push_back(pw.back() * loop_value());
    return pw[static_cast<std::size_t>(k)];
}

// An element of TL_n written as (sum_d num_d * d) / den.
class TLElement
{
public:
    explicit TLElement(int n = 0) : n_(n) {}

    static TLElement identity(int n) { return basis(Matching::identity(n)); }

    static TLElement basis(const Matching &d, VLaurent c = VLaurent(1))
    {
        TLElement e(d.n());
        if (!c.is_zero()) e.num_.emplace(d, std::move(c));
        return e;
    }

    int n() const noexcept { return n_; }
    const QDen &denominator() const noexcept { return den_; }
    const std::map<Matching, VLaurent> &numerators() const noexcept { return num_; }
    std::size_t size() const noexcept { return num_.size(); }
    bool is_zero() const noexcept { return num_.empty(); }

    VRational coeff(const Matching &d) const
    {
        if (d.n() != n_) throw domain_error("coeff_of: strand-count mismatch");
        auto it = num_.find(d);
        if (it == num_.end()) return VRational{};
        return VRational(it->second, den_);
    }

    TLElement scaled(const VRational &s) const
    {
        TLElement r(n_);
        if (s.is_zero()) return r;
        r.den_ = den_ * s.denominator();
        for (auto &[d, c] : num_) r.num_.emplace(d, c * s.numerator());
        r.reduce();
        return r;
    }

    friend TLElement operator+(const TLElement &a, const TLElement &b) { return combine(a, b, false); }
    friend TLElement operator-(const TLElement &a, const TLElement &b) { return combine(a, b, true); }

    // a * b is b stacked on top of a.
    friend TLElement operator*(const TLElement &a, const TLElement &b)
    {
        if (a.n_ != b.n_) throw domain_error("TL product: strand-count mismatch");
        TLElement r(a.n_);
        r.den_ = a.den_ * b.den_;
        for (auto &[da, ca] : a.num_)
            for (auto &[db, cb] : b.num_) {
                auto [d, loops] = match_mul(da, db);
                VLaurent c = ca * cb;
                if (loops) c *= loop_power(loops);
                r.accumulate(d, c);
            }
        r.reduce();
        return r;
    }

    friend TLElement tensor(const TLElement &a, const TLElement &b)
    {
        TLElement r(a.n_ + b.n_);
        r.den_ = a.den_ * b.den_;
        for (auto &[da, ca] : a.num_)
            for (auto &[db, cb] : b.num_) r.accumulate(tensor(da, db), ca * cb);
        r.reduce();
        return r;
    }

    TLElement partial_trace(int m) const
    {
        TLElement r(n_ - m);
        r.den_ = den_;
        for (auto &[d, c] : num_) {
            auto [e, loops] = match_partial_trace(d, m);
            r.accumulate(e, loops ? c * loop_power(loops) : c);
        }
        r.reduce();
        return r;
    }

    // Closure of all strands.
    VRational trace() const
    {
        VLaurent s;
        for (auto &[d, c] : num_) s += c * loop_power(match_partial_trace(d, n_).second);
        return VRational(std::move(s), den_);
    }

    friend bool operator==(const TLElement &a, const TLElement &b)
    {
        if (a.n_ != b.n_) return false;
        return (a - b).is_zero();
    }

    // Divides out quantum-integer factors shared by the denominator and every numerator.
    void reduce()
    {
        if (num_.empty()) {
            den_ = QDen{};
            return;
        }
        auto exps = den_.exponents();
        for (auto it = exps.rbegin(); it != exps.rend(); ++it) {
            const VLaurent qj = quantum_int(it->first);
            for (int e = it->second; e > 0; --e) {
                std::vector<VLaurent> quo;
                quo.reserve(num_.size());
                for (auto &[d, c] : num_) {
                    auto q = VLaurent::exact_div(c, qj);
                    if (!q) break;
                    quo.push_back(std::move(*q));
                }
                if (quo.size() != num_.size()) break;
                std::size_t k = 0;
                for (auto &[d, c] : num_) c = std::move(quo[k++]);
                den_.mul_qint(it->first, -1);
            }
        }
    }

private:
    void accumulate(const Matching &d, const VLaurent &c)
    {
        if (c.is_zero()) return;
        auto [it, inserted] = num_.emplace(d, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) num_.erase(it);
        }
    }

    static TLElement combine(const TLElement &a, const TLElement &b, bool subtract)
    {
        if (a.n_ != b.n_) throw domain_error("TL sum: strand-count mismatch");
        TLElement r(a.n_);
        r.den_ = QDen::lcm(a.den_, b.den_);
        const VLaurent fa = QDen::quotient(r.den_, a.den_).expand();
        const VLaurent fb = QDen::quotient(r.den_, b.den_).expand();
        for (auto &[d, c] : a.num_) r.accumulate(d, c * fa);
        for (auto &[d, c] : b.num_) r.accumulate(d, subtract ? -(c * fb) : c * fb);
        r.reduce();
        return r;
    }

    int n_ = 0;
    QDen den_;
    std::map<Matching, VLaurent> num_;
};

} // namespace qtail
