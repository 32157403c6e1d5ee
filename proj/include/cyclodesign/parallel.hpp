#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace cyclo {

/// Run fn(chunk_index, begin, end) over [0, total) split into contiguous
/// chunks, one thread per chunk. Callers merge per-chunk results in chunk
/// order, which keeps outcomes independent of the thread count.
template <class Fn>
void parallel_chunks(std::uint64_t total, std::uint32_t threads, Fn&& fn) {
    if (threads == 0) threads = 1;
    const std::uint64_t nchunks = std::min<std::uint64_t>(threads, total ? total : 1);
    if (nchunks <= 1) {
        fn(std::size_t{0}, std::uint64_t{0}, total);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nchunks);
    const std::uint64_t per = total / nchunks, extra = total % nchunks;
    std::uint64_t begin = 0;
    for (std::uint64_t c = 0; c < nchunks; ++c) {
        const std::uint64_t len = per + (c < extra ? 1 : 0);
        pool.emplace_back([&fn, c, begin, len] { fn(static_cast<std::size_t>(c), begin, begin + len); });
        begin += len;
    }
    for (auto& t : pool) t.join();
}

inline std::uint32_t default_thread_count() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

} // namespace cyclo
