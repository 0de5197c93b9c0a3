#pragma once

#include <cstddef>
#include <functional>

namespace fracdim2d {

/// Worker count: FRACDIM2D_THREADS if set and positive, otherwise the
/// hardware concurrency (0 or unset means auto).
std::size_t thread_count();

/// Runs body(i) for i in [begin, end) over contiguous chunks, one chunk per
/// worker. Bodies must write disjoint outputs; the first exception thrown by
/// any worker is rethrown after all workers join.
void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& body);

}  // namespace fracdim2d
