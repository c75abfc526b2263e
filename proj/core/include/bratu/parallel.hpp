#pragma once

#include <cstddef>
#include <functional>

namespace bratu {

/// Worker count from the BRATU_THREADS environment variable (default 1,
/// clamped to [1, 64]).
std::size_t thread_budget();

/// Runs body(i) for i in [0, count). Every index is visited exactly once and
/// bodies must only write state owned by their index. The first exception
/// thrown by any body is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace bratu
