#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace qtail {

// Calls fn(i) for i in [0, count) on up to `jobs` threads. The first
// exception by index is rethrown after all workers finish.
inline void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)> &fn)
{
    std::vector<std::exception_ptr> errs(count);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < count;) {
            try {
                fn(i);
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::min<std::size_t>(count, jobs > 1 ? static_cast<std::size_t>(jobs) : 1);
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
        for (auto &th : pool) th.join();
    }
    for (auto &e : errs)
        if (e) std::rethrow_exception(e);
}

} // namespace qtail
