#include "internal/parallel.hpp"

namespace codim1::detail {

int& thread_count() {
    static int n = 1;
    return n;
}

void parallel_for(int n, const std::function<void(int, int)>& fn) {
    const int workers = std::max(1, std::min(thread_count(), n));
    if (workers == 1 || n < 256) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int lo = w * chunk;
        const int hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace codim1::detail
