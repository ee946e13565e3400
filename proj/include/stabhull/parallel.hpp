#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace stabhull {

/// Runs fn(i) for i in [0, n). Tasks must write results into per-index slots;
/// callers reduce sequentially afterwards, so the outcome is independent of
/// the thread count.
inline void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    int count = std::min(threads, n);
    pool.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

}  // namespace stabhull
