#include "soficdim/accum.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <string>
#include <thread>

namespace soficdim {

void run_indexed_tasks(int count, int threads,
                       const std::function<void(int)>& fn) {
    if (count <= 0) return;
    if (threads <= 1 || count == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    const int workers = std::min(threads, count);
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};
    std::mutex dummy;  // guards first_error
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    bool expected = false;
                    if (failed.compare_exchange_strong(expected, true)) {
                        std::lock_guard<std::mutex> lock(dummy);
                        first_error = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

int thread_count_from_env() {
    const char* raw = std::getenv("SOFICDIM_THREADS");
    if (!raw) return 1;
    try {
        const int n = std::stoi(raw);
        return n >= 1 ? n : 1;
    } catch (const std::exception&) {
        return 1;
    }
}

}  // namespace soficdim
