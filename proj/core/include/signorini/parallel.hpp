#pragma once

#include <functional>

namespace signorini {

/// Worker count for element/edge loops: SIGNORINI_THREADS if set (clamped to
/// [1, hardware]), otherwise the hardware concurrency.
int worker_count();

/// Run fn over [0, n) split into contiguous chunks, one per worker. The
/// callable must only write to disjoint, index-addressed state.
void parallel_for(int n, const std::function<void(int begin, int end)>& fn);

}  // namespace signorini
