#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace gmaint {

inline unsigned default_threads() {
    const unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1u : h;
}

// Runs fn(block_index, lo, hi) over fixed-size index blocks. Block boundaries
// depend only on (n_items, block_size), never on the thread count, so a caller
// that accumulates per block and folds blocks in index order gets bit-identical
// results at any parallelism level.
template <class Fn>
inline void parallel_for_blocks(std::size_t n_items, std::size_t block_size, unsigned threads, Fn&& fn) {
    if (n_items == 0) return;
    if (block_size == 0) block_size = 1;
    const std::size_t n_blocks = (n_items + block_size - 1) / block_size;

    auto run_block = [&](std::size_t b) {
        const std::size_t lo = b * block_size;
        const std::size_t hi = lo + block_size < n_items ? lo + block_size : n_items;
        fn(b, lo, hi);
    };

    if (threads <= 1 || n_blocks == 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) run_block(b);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= n_blocks) return;
            try {
                run_block(b);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };

    const unsigned n_workers = threads < n_blocks ? threads : static_cast<unsigned>(n_blocks);
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace gmaint
