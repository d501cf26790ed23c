#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace supertrace {

// Evaluates f(i) for i in [0, count) on up to `threads` workers, writing each
// result into its own preassigned slot. The returned vector is identical to a
// sequential run regardless of the worker budget.
template <class F>
auto parallel_map(std::size_t count, F f, unsigned threads)
    -> std::vector<decltype(f(std::size_t{0}))> {
    using R = decltype(f(std::size_t{0}));
    std::vector<R> out(count);
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) break;
            out[i] = f(i);
        }
    };
    unsigned nw = std::min<std::size_t>(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (unsigned t = 0; t < nw; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return out;
}

}  // namespace supertrace
