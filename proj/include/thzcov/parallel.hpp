#pragma once
#include <atomic>
#include <thread>
#include <vector>

namespace thzcov::detail {

inline int default_threads() {
    const unsigned h = std::thread::hardware_concurrency();
    return h ? static_cast<int>(h) : 1;
}

// Runs fn(i) for i in [0, n). Each index must write only to its own output
// slot; callers reduce the slots serially afterwards, which keeps results
// bitwise independent of the worker count.
template <class Fn>
void parallel_for(long n, int threads, Fn&& fn) {
    if (threads <= 0) threads = default_threads();
    if (threads == 1 || n <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    auto worker = [&]() {
        for (;;) {
            const long i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const int nw = static_cast<int>(std::min<long>(threads, n));
    pool.reserve(nw);
    for (int t = 0; t < nw; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

} // namespace thzcov::detail
