#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace proxcvx {

/// Worker count from PROXCVX_THREADS (0 or 1 means sequential). Defaults to
/// the hardware concurrency when unset.
unsigned worker_count();

/// Calls body(i) for i in [0, n), spreading contiguous index blocks across
/// workers. Each index is visited exactly once; callers write results into
/// index-addressed slots so the outcome does not depend on scheduling.
/// The first exception thrown by any worker is rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t min_block = 256);

}  // namespace proxcvx
