#ifndef QRNET_PARALLEL_HPP_
#define QRNET_PARALLEL_HPP_

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace qrnet {

/// Resolves a thread-count request; 0 means hardware concurrency.
inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) {
        return requested;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Runs `work(block, begin, end)` over `block_count` contiguous slices of
/// [0, total). Blocks are handed out dynamically, but the slice boundaries
/// depend only on `block_count`, never on the thread count — callers that
/// merge per-block results in block order get identical output at any
/// parallelism level.
template <typename Work>
void parallel_blocks(std::size_t total, std::size_t block_count, unsigned threads,
                     Work &&work) {
    if (total == 0) {
        return;
    }
    if (block_count > total) {
        block_count = total;
    }
    const std::size_t block_size = (total + block_count - 1) / block_count;
    threads = resolve_threads(threads);

    // Thread spawn costs dwarf the work on small inputs; the sequential path
    // visits the same blocks in the same partition.
    constexpr std::size_t kSpawnThreshold = 2048;
    if (threads <= 1 || total < kSpawnThreshold) {
        for (std::size_t block = 0; block < block_count; ++block) {
            const std::size_t begin = block * block_size;
            const std::size_t end = std::min(begin + block_size, total);
            if (begin < end) {
                work(block, begin, end);
            }
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    auto runner = [&] {
        while (true) {
            const std::size_t block = next.fetch_add(1, std::memory_order_relaxed);
            if (block >= block_count) {
                return;
            }
            const std::size_t begin = block * block_size;
            const std::size_t end = std::min(begin + block_size, total);
            if (begin < end) {
                work(block, begin, end);
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back(runner);
    }
    for (std::thread &t : pool) {
        t.join();
    }
}

} // namespace qrnet

#endif // QRNET_PARALLEL_HPP_
