#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>

#include "attainrisk/execution.hpp"

namespace attainrisk::detail {

// Smallest index in [0, count) satisfying `accept`. Both paths return the
// same index; the parallel one skips indices above the best found so far.
// `accept` must not throw.
template <typename Accept>
std::optional<std::size_t> first_accepted(std::size_t count, ExecutionPolicy policy,
                                          Accept&& accept) {
  if (policy == ExecutionPolicy::kSerial) {
    for (std::size_t k = 0; k < count; ++k) {
      if (accept(k)) return k;
    }
    return std::nullopt;
  }
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t k = 0; k < n; ++k) {
    std::int64_t current;
#pragma omp atomic read
    current = best;
    if (k > current) continue;
    if (accept(static_cast<std::size_t>(k))) {
#pragma omp critical(attainrisk_first_accepted)
      best = std::min(best, k);
    }
  }
  if (best == std::numeric_limits<std::int64_t>::max()) return std::nullopt;
  return static_cast<std::size_t>(best);
}

}  // namespace attainrisk::detail
