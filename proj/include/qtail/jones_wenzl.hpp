#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "qtail/errors.hpp"
#include "qtail/tl.hpp"

namespace qtail {

struct OracleLimits {
    int max_color = 8;
    int max_crossings = 12;
    int max_boundary = 24;
};

namespace detail {

struct jw_table {
    std::mutex mu;
    std::map<int, std::shared_ptr<const TLElement>> memo;
};

inline jw_table &jw_cache()
{
    static jw_table t;
    return t;
}

} // namespace detail

// f^(n) from f^(n) = f^(n-1) x 1 + ([n-1]/[n]) (f^(n-1) x 1) e_{n-1} (f^(n-1) x 1).
inline const TLElement &jones_wenzl(int n, const OracleLimits &limits = {})
{
    if (n < 1) throw domain_error("jones_wenzl: color must be positive");
    if (n > limits.max_color)
        throw capacity_error("jones_wenzl: color " + std::to_string(n) + " exceeds the limit " +
                             std::to_string(limits.max_color));
    auto &cache = detail::jw_cache();
    {
        std::lock_guard lk(cache.mu);
        if (auto it = cache.memo.find(n); it != cache.memo.end()) return *it->second;
    }
    std::shared_ptr<const TLElement> f;
    if (n == 1) {
        f = std::make_shared<const TLElement>(TLElement::identity(1));
    } else {
        const TLElement g = tensor(jones_wenzl(n - 1, limits), TLElement::identity(1));
        const TLElement h = (g * TLElement::basis(Matching::cup_cap(n, n - 1))) * g;
        f = std::make_shared<const TLElement>(g + h.scaled(qint_ratio(n - 1, n)));
    }
    // Concurrent builders compute identical values; the first insert wins.
    std::lock_guard lk(cache.mu);
    return *cache.memo.emplace(n, std::move(f)).first->second;
}

inline VRational coeff_of(const TLElement &e, const Matching &d) { return e.coeff(d); }

} // namespace qtail
