#pragma once

#include <functional>

namespace tvdradmm {

/// Worker count for per-node updates inside a sweep.  Initialized from the
/// TVDRADMM_THREADS environment variable (default 1); settable for tests.
/// Results are bit-identical for any count: workers own disjoint index
/// ranges and no reductions are involved.
int worker_count();
void set_worker_count(int n);

/// Runs fn(i) for i in [0, count) across the configured workers.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace tvdradmm
