#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace semcom::harness {

/// Runs fn(i) for i in [0, n) on up to n_threads workers. Callers index
/// into pre-sized result storage, so output order never depends on
/// scheduling; streams must be derived per index by the caller.
template <class Fn>
void parallel_for(std::size_t n, int n_threads, Fn&& fn) {
    if (n == 0) return;
    if (n_threads <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int workers = static_cast<int>(
        std::min<std::size_t>(n, static_cast<std::size_t>(n_threads)));
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace semcom::harness
