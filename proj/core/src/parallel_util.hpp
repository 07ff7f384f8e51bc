#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace oedcalib::detail {

/// Worker cap: OED_CALIB_THREADS when set, else hardware concurrency.
inline int thread_cap() {
    static const int cap = [] {
        if (const char* env = std::getenv("OED_CALIB_THREADS")) {
            const int v = std::atoi(env);
            if (v >= 1) return std::min(v, 256);
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : static_cast<int>(std::min(hw, 32u));
    }();
    return cap;
}

/// Run body(i) for i in [0, n). Results must be written to preallocated
/// per-index slots by the caller so the reduction stays deterministic.
inline void parallel_for(int n, const std::function<void(int)>& body) {
    const int workers = std::min(n, thread_cap());
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            for (int i = w; i < n; i += workers) body(i);
        });
    }
    for (auto& t : threads) t.join();
}

}  // namespace oedcalib::detail
