#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace holder_avg {

// Worker cap: HOLDER_AVG_THREADS if set (>=1), else hardware concurrency.
inline unsigned thread_budget() {
    if (const char* env = std::getenv("HOLDER_AVG_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

// Runs fn(i) for i in [0, count). Each index must touch only its own output
// slot; results are then independent of the worker count and chunking.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const unsigned budget = std::min<std::size_t>(thread_budget(), count == 0 ? 1 : count);
    if (budget <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(budget);
    const std::size_t chunk = (count + budget - 1) / budget;
    for (unsigned w = 0; w < budget; ++w) {
        const std::size_t begin = static_cast<std::size_t>(w) * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        workers.emplace_back([&fn, begin, end] {
            for (std::size_t i = begin; i < end; ++i) fn(i);
        });
    }
    for (auto& t : workers) t.join();
}

}  // namespace holder_avg
