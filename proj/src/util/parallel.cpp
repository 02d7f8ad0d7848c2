#include "riskbsde/util/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace riskbsde::util {

namespace {
int g_threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void set_thread_count(int n) { g_threads = std::max(1, n); }
int thread_count() { return g_threads; }

void parallel_chunks(std::size_t n, std::size_t chunk_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
    if (n == 0) return;
    chunk_size = std::max<std::size_t>(1, chunk_size);
    const std::size_t nchunks = (n + chunk_size - 1) / chunk_size;
    const int workers = std::min<std::size_t>(static_cast<std::size_t>(g_threads), nchunks);

    if (workers <= 1) {
        for (std::size_t c = 0; c < nchunks; ++c) {
            const std::size_t b = c * chunk_size;
            body(c, b, std::min(n, b + chunk_size));
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= nchunks) return;
            const std::size_t b = c * chunk_size;
            body(c, b, std::min(n, b + chunk_size));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers) - 1);
    for (int w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
}

}  // namespace riskbsde::util
