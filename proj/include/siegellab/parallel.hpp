#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace siegellab {

/// Worker count: hardware concurrency capped by SIEGEL_LAB_THREADS.
inline unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SIEGEL_LAB_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return n;
}

/// Runs fn(i) for i in [0, n). Work is handed out in chunks through an atomic
/// cursor; callers must make per-index work independent and merge results
/// order-independently (integer counters), so the outcome does not depend on
/// the worker count.
inline void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn,
                         std::int64_t chunk = 256) {
    const unsigned workers = worker_count();
    if (workers <= 1 || n < 2 * chunk) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> cursor{0};
    auto body = [&]() {
        while (true) {
            const std::int64_t start = cursor.fetch_add(chunk);
            if (start >= n) return;
            const std::int64_t stop = std::min(n, start + chunk);
            for (std::int64_t i = start; i < stop; ++i) fn(i);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body);
    body();
    for (auto& th : pool) th.join();
}

/// SplitMix64: stable seed scrambler for per-sample substreams.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Uniform double in [0,1) from a 64-bit word.
inline double u01(std::uint64_t word) {
    return static_cast<double>(word >> 11) * 0x1.0p-53;
}

}  // namespace siegellab
