#pragma once
// Deterministic data-parallel helpers. Work is split into one contiguous
// chunk per thread and every chunk writes a disjoint index range, so results
// are bitwise identical for any thread count. Reductions must NOT go through
// here; all norm/inner-product sums in this codebase are serial in fixed
// lattice order.

#include <cstddef>
#include <thread>
#include <vector>

namespace mps {

int thread_count();
void set_thread_count(int n);

// f(begin, end) is called on [begin, end) subranges covering [0, count).
template <class F>
void parallel_for(std::size_t count, F&& f) {
    const int nt = thread_count();
    if (nt <= 1 || count < 2048) {
        f(std::size_t{0}, count);
        return;
    }
    const std::size_t chunk = (count + nt - 1) / nt;
    std::vector<std::thread> pool;
    pool.reserve(nt - 1);
    for (int t = 1; t < nt; ++t) {
        std::size_t b = t * chunk;
        if (b >= count) break;
        std::size_t e = std::min(count, b + chunk);
        pool.emplace_back([&f, b, e] { f(b, e); });
    }
    f(std::size_t{0}, std::min(chunk, count));
    for (auto& th : pool) th.join();
}

}  // namespace mps
