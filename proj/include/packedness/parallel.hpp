#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace packedness {

/// Runs body(begin, end, worker) over contiguous chunks of [0, count). With
/// threads <= 1 the body runs inline on the calling thread.
template <class Body>
void parallel_chunks(std::size_t count, unsigned threads, Body&& body) {
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, count));
    if (workers == 1) {
        body(std::size_t{0}, count, std::size_t{0});
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = count * w / workers;
        const std::size_t hi = count * (w + 1) / workers;
        pool.emplace_back([&body, lo, hi, w] { body(lo, hi, w); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace packedness
