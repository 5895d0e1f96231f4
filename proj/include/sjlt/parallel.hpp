#pragma once

#include <cstddef>

namespace sjlt::parallel {

/// Worker count for OpenMP regions: the OpenMP default, capped by the
/// SJLT_THREADS environment variable when it holds a positive integer.
int worker_count();

/// Fixed partition count for reductions whose floating-point result must not
/// depend on the number of workers. Partials are combined in partition order.
inline constexpr std::size_t kReductionPartitions = 256;

/// Half-open slice [begin, end) of partition `part` when `total` items are
/// split into `parts` contiguous blocks.
struct Slice {
  std::size_t begin;
  std::size_t end;
};
Slice partition(std::size_t total, std::size_t parts, std::size_t part) noexcept;

}  // namespace sjlt::parallel
