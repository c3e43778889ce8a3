#ifndef SCF_PARALLEL_HPP
#define SCF_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace scf {

inline int effective_jobs(int jobs) {
    if (jobs > 0) return jobs;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [begin, end) on a bounded worker pool. fn must be
// pure up to its own output slot; the first exception wins and is
// rethrown after all workers drain.
inline void parallel_for(long begin, long end, int jobs,
                         const std::function<void(long)>& fn) {
    const int workers = std::min<long>(effective_jobs(jobs),
                                       std::max(1L, end - begin));
    if (workers <= 1) {
        for (long i = begin; i < end; ++i) fn(i);
        return;
    }
    std::atomic<long> next{begin};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (!failed.load(std::memory_order_relaxed)) {
                long i = next.fetch_add(1);
                if (i >= end) break;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    failed.store(true);
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace scf

#endif  // SCF_PARALLEL_HPP
