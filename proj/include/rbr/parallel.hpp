#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace rbr {

// Runs body(worker, begin, end) over dynamic chunks of [0, n). Results must
// be written to per-index slots or merged commutatively; then the outcome is
// independent of the worker count and of chunk scheduling.
template <class Body>
void parallel_chunks(std::uint64_t n, int threads, Body&& body) {
    threads = std::max(1, threads);
    if (n == 0) return;
    std::uint64_t chunk = std::max<std::uint64_t>(1, n / (static_cast<std::uint64_t>(threads) * 16));
    if (threads == 1) {
        body(0, std::uint64_t{0}, n);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    auto run = [&](int worker) {
        for (;;) {
            std::uint64_t begin = next.fetch_add(chunk);
            if (begin >= n) return;
            body(worker, begin, std::min(begin + chunk, n));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (int w = 1; w < threads; ++w) pool.emplace_back(run, w);
    run(0);
    for (auto& t : pool) t.join();
}

}  // namespace rbr
