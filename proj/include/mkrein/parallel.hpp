#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace mkrein {

// Runs fn(i) for i in [0, n) over contiguous chunks. Workers never share
// state; callers write to preallocated per-index slots, so results do not
// depend on the thread count.
inline void parallel_for(long n, int threads,
                         const std::function<void(long)>& fn) {
    if (n <= 0) return;
    if (threads <= 1 || n == 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    const long workers = std::min<long>(threads, n);
    const long chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (long w = 0; w < workers; ++w) {
        const long lo = w * chunk;
        const long hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (long i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

inline int default_thread_count() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace mkrein
