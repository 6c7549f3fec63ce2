#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dlgrowth {

inline unsigned default_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

// Runs fn(i) for i in [0, count). Work is striped across threads; callers
// must write results into preallocated index-addressed slots so the output
// is identical for every thread count.
template <typename Fn>
void parallel_for(size_t count, Fn&& fn, unsigned threads = default_threads()) {
    if (count == 0) return;
    if (threads <= 1 || count == 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    if (threads > count) threads = static_cast<unsigned>(count);
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (size_t i = t; i < count; i += threads) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace dlgrowth
