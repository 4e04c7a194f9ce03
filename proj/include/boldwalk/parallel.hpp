// Deterministic parallel map over an index range. Each index owns its output
// slot and its own RNG stream, so results are identical for any thread count.

#ifndef BOLDWALK_PARALLEL_HPP
#define BOLDWALK_PARALLEL_HPP

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace boldwalk {

template <class Fn>
void parallel_for(std::int64_t n, int threads, Fn&& fn) {
    if (n <= 0) return;
    if (threads <= 1 || n == 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const int workers = static_cast<int>(
        std::min<std::int64_t>(threads, n));
    std::atomic<std::int64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&]() {
        constexpr std::int64_t kChunk = 8;
        for (;;) {
            const std::int64_t begin = next.fetch_add(kChunk);
            if (begin >= n) return;
            const std::int64_t end = std::min(begin + kChunk, n);
            try {
                for (std::int64_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace boldwalk

#endif // BOLDWALK_PARALLEL_HPP
