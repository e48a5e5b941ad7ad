#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace locus {

/// Worker cap: LOCUS_THREADS if set, else hardware concurrency.
inline unsigned worker_count() {
    if (const char* env = std::getenv("LOCUS_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

/// Runs fn(i) for i in [0, n) on up to worker_count() threads and collects
/// results in index order. fn must depend only on i (per-trial derived seeds),
/// so the result is identical for any worker count.
template <typename T>
std::vector<T> parallel_map(std::uint64_t n, const std::function<T(std::uint64_t)>& fn) {
    std::vector<T> out(n);
    unsigned workers = worker_count();
    if (workers <= 1 || n < 2) {
        for (std::uint64_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::uint64_t> next{0};
    auto body = [&] {
        for (;;) {
            std::uint64_t i = next.fetch_add(1);
            if (i >= n) return;
            out[i] = fn(i);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace locus
