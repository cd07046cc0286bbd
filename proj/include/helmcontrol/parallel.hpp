#ifndef HELMCONTROL_PARALLEL_HPP
#define HELMCONTROL_PARALLEL_HPP

#include <cstdint>
#include <functional>

namespace helm {

/// Runs body(i) for i in [0, n). With threads > 1 the index range is split
/// into contiguous blocks, one per worker; every index is still processed
/// exactly once, so writes to disjoint slots give bit-identical results
/// regardless of the thread count. threads <= 1 runs inline.
void parallel_for(std::int64_t n, int threads, const std::function<void(std::int64_t)>& body);

/// Resolves a thread-count request: n >= 1 is taken as-is, anything else
/// falls back to the HELM_CONTROL_THREADS environment variable, then to 1.
int resolve_threads(int requested);

}  // namespace helm

#endif  // HELMCONTROL_PARALLEL_HPP
