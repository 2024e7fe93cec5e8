#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace isoslice {

/// Global worker count for the samplers (CLI --threads). 0 = hardware.
inline std::atomic<int>& thread_count_setting() {
    static std::atomic<int> n{0};
    return n;
}

inline void set_thread_count(int n) { thread_count_setting().store(n); }

inline int effective_thread_count() {
    int n = thread_count_setting().load();
    if (n > 0) return n;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Fixed chunk size for all chunked samplers. Results are reduced in chunk
/// order, so estimates are bit-identical at any thread count.
inline constexpr std::int64_t kChunkSamples = 4096;

/// Runs fn(chunk_index) for chunk_index in [0, n_chunks), possibly on
/// several threads. Chunk results must be written to per-chunk slots by fn;
/// the caller reduces them sequentially afterwards.
inline void run_chunks(std::int64_t n_chunks, const std::function<void(std::int64_t)>& fn) {
    int workers = effective_thread_count();
    if (workers <= 1 || n_chunks <= 1) {
        for (std::int64_t c = 0; c < n_chunks; ++c) fn(c);
        return;
    }
    std::atomic<std::int64_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::int64_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            fn(c);
        }
    };
    std::vector<std::thread> pool;
    int spawn = static_cast<int>(std::min<std::int64_t>(workers, n_chunks));
    pool.reserve(spawn);
    for (int i = 0; i < spawn; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

}  // namespace isoslice
