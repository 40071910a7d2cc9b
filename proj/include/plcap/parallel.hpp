#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace plcap {

// Worker count: explicit argument wins, then PLCAP_THREADS, then hardware.
int default_threads();

// Deterministic chunked reduction over [0, n). The index range is split into
// fixed-size chunks; chunk results are combined in chunk order, so the result
// does not depend on the number of threads.
template <class T, class ChunkFn, class CombineFn>
T chunked_reduce(uint64_t n, uint64_t chunk_size, T init, ChunkFn chunk_fn,
                 CombineFn combine, int threads = 0) {
    if (n == 0) return init;
    if (threads <= 0) threads = default_threads();
    const uint64_t nchunks = (n + chunk_size - 1) / chunk_size;
    std::vector<T> partial((size_t)nchunks, init);
    if (threads == 1 || nchunks == 1) {
        for (uint64_t c = 0; c < nchunks; ++c) {
            const uint64_t b = c * chunk_size;
            partial[(size_t)c] = chunk_fn(b, std::min(n, b + chunk_size));
        }
    } else {
        std::vector<std::thread> pool;
        std::atomic<uint64_t> next{0};
        const int nt = (int)std::min<uint64_t>((uint64_t)threads, nchunks);
        pool.reserve((size_t)nt);
        for (int t = 0; t < nt; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    const uint64_t c = next.fetch_add(1);
                    if (c >= nchunks) return;
                    const uint64_t b = c * chunk_size;
                    partial[(size_t)c] = chunk_fn(b, std::min(n, b + chunk_size));
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    T acc = init;
    for (uint64_t c = 0; c < nchunks; ++c) acc = combine(acc, partial[(size_t)c]);
    return acc;
}

}  // namespace plcap
