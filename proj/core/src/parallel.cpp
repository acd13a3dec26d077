#include "blockent/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace blockent {

namespace {

thread_local bool inside_parallel_region = false;

}  // namespace

int worker_count() {
    const char* env = std::getenv("BLOCKENT_THREADS");
    long requested = 0;
    if (env != nullptr && *env != '\0') {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end != nullptr && *end == '\0' && parsed >= 0) {
            requested = parsed;
        }
    }
    if (requested > 0) {
        return static_cast<int>(requested);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(long n, const std::function<void(long)>& fn) {
    if (n <= 0) {
        return;
    }
    const int workers = inside_parallel_region ? 1 : worker_count();
    if (workers == 1 || n == 1) {
        for (long i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }

    std::atomic<long> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const auto body = [&] {
        inside_parallel_region = true;  // nested calls degrade to sequential
        for (;;) {
            const long i = next.fetch_add(1);
            if (i >= n) {
                return;
            }
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
            }
        }
    };

    std::vector<std::thread> pool;
    const long spawn = std::min<long>(workers, n);
    pool.reserve(static_cast<std::size_t>(spawn));
    for (long w = 0; w < spawn; ++w) {
        pool.emplace_back(body);
    }
    for (std::thread& t : pool) {
        t.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

}  // namespace blockent
