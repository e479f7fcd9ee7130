#pragma once

#include <cstddef>
#include <functional>

namespace voxmerge {

/// Upper bound on worker threads used by internal loops. 0 restores the
/// default (VOXMERGE_THREADS, else hardware concurrency).
void set_thread_count(std::size_t n);
std::size_t thread_count();

/// Runs body(begin_i, end_i) over a static partition of [begin, end).
/// Chunks are contiguous and disjoint, so any per-index work that writes
/// only its own outputs is schedule independent.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace voxmerge
