#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace skelcut {

/// Resolves a requested worker count; 0 means "use hardware concurrency".
inline int effective_workers(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(i) for every i in [0, count) on up to `workers` threads. Work
/// items are claimed through a shared counter, so the assignment of items to
/// threads is nondeterministic; callers keep results deterministic by writing
/// into per-index slots and reducing sequentially afterwards.
template <typename Fn>
void parallel_for(int count, int workers, Fn&& fn) {
    workers = std::min(effective_workers(workers), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto body = [&] {
        try {
            for (;;) {
                const int i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= count) return;
                fn(i);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mu);
            if (!error) error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int w = 1; w < workers; ++w) pool.emplace_back(body);
    body();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace skelcut
