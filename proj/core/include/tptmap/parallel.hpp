#pragma once

#include <cstddef>
#include <functional>

namespace tptmap {

/// Caps the number of worker threads used by every module. 0 restores the
/// default (hardware concurrency).
void set_worker_count(std::size_t workers);
std::size_t worker_count();

/// Runs body(begin, end) over contiguous blocks of [0, n). Blocks are disjoint,
/// so bodies that only write to their own index range stay deterministic
/// regardless of the worker count.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_block = 64);

}  // namespace tptmap
