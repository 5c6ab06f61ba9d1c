#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace nselab {

/// Worker count used by pointwise and per-component loops. Reductions never
/// run in parallel, so results do not depend on this setting.
void set_thread_count(int threads);
int thread_count();

/// Calls fn(begin, end) on disjoint contiguous chunks of [0, n).
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn)
{
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
    if (workers <= 1) {
        fn(std::size_t{0}, n);
        return;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin < end) pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    fn(std::size_t{0}, std::min(n, chunk));
}

}  // namespace nselab
