#include "solenoid/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace solenoid {

unsigned thread_count()
{
    if (const char* env = std::getenv("SOLENOID_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body)
{
    const std::size_t workers = std::min<std::size_t>(thread_count(), n / 2048 + 1);
    if (workers <= 1) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t b = w * chunk, e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&body, b, e] { body(b, e); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace solenoid
