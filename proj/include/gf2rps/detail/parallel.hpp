#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace gf2rps::detail {

// Run fn(i) for i in [begin, end). With parallel set and enough work the
// range is chunked across hardware threads; iterations must write to
// disjoint state, which keeps the parallel result bit-identical to the
// sequential one.
template <typename Fn>
void parallel_for(std::size_t begin, std::size_t end, bool parallel, Fn&& fn) {
    const std::size_t count = end > begin ? end - begin : 0;
    const unsigned hw = std::thread::hardware_concurrency();
    if (!parallel || hw < 2 || count < 16) {
        for (std::size_t i = begin; i < end; ++i) fn(i);
        return;
    }
    const std::size_t nthreads = std::min<std::size_t>(hw, (count + 15) / 16);
    const std::size_t chunk = (count + nthreads - 1) / nthreads;
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        const std::size_t lo = begin + t * chunk;
        const std::size_t hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace gf2rps::detail
