#pragma once

#include <cstddef>
#include <functional>

namespace coles {

/// Caps worker threads for row-parallel kernels. 0 means hardware
/// concurrency. Outputs never depend on this value.
void set_num_threads(std::size_t threads) noexcept;
std::size_t num_threads() noexcept;

/// Runs body(begin, end) over contiguous chunks of [0, count).
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

} // namespace coles
