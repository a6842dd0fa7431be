#include "coles/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace coles {

namespace {
std::atomic<std::size_t> g_threads{1};
}

void set_num_threads(std::size_t threads) noexcept
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    g_threads.store(threads);
}

std::size_t num_threads() noexcept { return g_threads.load(); }

void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body)
{
    const std::size_t workers = std::min(num_threads(), count / 64 + 1);
    if (workers <= 1) {
        body(0, count);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end)
            break;
        pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
}

} // namespace coles
