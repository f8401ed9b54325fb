#include "signorini/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace signorini {

int worker_count() {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SIGNORINI_THREADS")) {
        try {
            const int requested = std::stoi(env);
            if (requested >= 1) return std::min<int>(requested, static_cast<int>(hw));
        } catch (...) {
            // fall through to the hardware default on malformed values
        }
    }
    return static_cast<int>(hw);
}

void parallel_for(int n, const std::function<void(int, int)>& fn) {
    const int workers = std::min(worker_count(), std::max(1, n / 256));
    if (workers <= 1 || n < 512) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int begin = w * chunk;
        const int end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (std::thread& t : pool) t.join();
}

}  // namespace signorini
