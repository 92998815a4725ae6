#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace airimpact {

inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Runs fn(begin, end) over contiguous chunks of [0, n). Results must be
// written to per-index slots; chunk boundaries then have no observable
// effect and output is identical for any thread count.
inline void parallel_for(std::size_t n, unsigned threads,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
    threads = resolve_threads(threads);
    if (n == 0) return;
    if (threads <= 1 || n < 2 * threads) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(threads - 1);
    std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 1; t < threads; ++t) {
        std::size_t begin = t * chunk;
        if (begin >= n) break;
        std::size_t end = std::min(n, begin + chunk);
        workers.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    fn(0, std::min(n, chunk));
    for (auto& w : workers) w.join();
}

}  // namespace airimpact
