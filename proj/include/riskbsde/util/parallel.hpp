#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace riskbsde::util {

// Global worker count used by parallel_chunks. Defaults to the hardware
// concurrency; the CLI overrides it from --threads / RISKBSDE_THREADS.
void set_thread_count(int n);
int thread_count();

// Splits [0, n) into fixed-size chunks (size independent of the thread
// count) and runs body(chunk_index, begin, end) on a small thread pool.
// Chunk boundaries and per-chunk work are the same for any thread count,
// so writes into disjoint ranges are bit-reproducible.
void parallel_chunks(std::size_t n, std::size_t chunk_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

inline constexpr std::size_t kDefaultChunk = 8192;

// Deterministic parallel reduction: per-chunk partials are stored in a
// chunk-indexed array and combined sequentially in chunk order.
template <typename T, typename ChunkFn, typename CombineFn>
T reduce_chunks(std::size_t n, std::size_t chunk_size, T init,
                ChunkFn&& per_chunk, CombineFn&& combine) {
    if (n == 0) return init;
    const std::size_t nchunks = (n + chunk_size - 1) / chunk_size;
    std::vector<T> partials(nchunks, init);
    parallel_chunks(n, chunk_size, [&](std::size_t c, std::size_t b, std::size_t e) {
        partials[c] = per_chunk(b, e);
    });
    T acc = init;
    for (std::size_t c = 0; c < nchunks; ++c) acc = combine(acc, partials[c]);
    return acc;
}

}  // namespace riskbsde::util
