#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace carpet_recur::detail {

/// Splits [0, count) into `threads` contiguous chunks and runs
/// body(begin, end, worker) on each. The first exception thrown by any worker
/// is rethrown on the calling thread.
template <class Body>
void parallel_chunks(std::uint64_t count, unsigned threads, Body&& body) {
    threads = std::max(1u, threads);
    if (threads == 1 || count < 2) {
        body(std::uint64_t{0}, count, 0u);
        return;
    }
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        std::uint64_t begin = count * w / threads;
        std::uint64_t end = count * (w + 1) / threads;
        pool.emplace_back([&, begin, end, w] {
            try {
                body(begin, end, w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace carpet_recur::detail
