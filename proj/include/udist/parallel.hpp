#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace udist {

/// Split [0, count) into `workers` contiguous blocks; fn(begin, end, worker_index).
/// The first exception thrown by any worker is rethrown after all workers join.
template <class Fn>
void parallel_blocks(std::size_t workers, std::size_t count, Fn&& fn) {
    workers = std::max<std::size_t>(1, std::min(workers, std::max<std::size_t>(count, 1)));
    if (workers == 1) {
        fn(std::size_t{0}, count, std::size_t{0});
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = count * w / workers;
        const std::size_t end = count * (w + 1) / workers;
        pool.emplace_back([&, begin, end, w] {
            try {
                fn(begin, end, w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace udist
