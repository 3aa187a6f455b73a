#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

namespace qp {

/// Index of the first i in [0, count) with test(i), evaluating blocks of
/// candidates concurrently. The result is the same for every thread count.
template <class Test>
std::optional<std::size_t> first_accepted(std::size_t count, Test test, bool parallel = true) {
  constexpr std::size_t kBlock = 64;
  for (std::size_t start = 0; start < count; start += kBlock) {
    const std::size_t end = std::min(count, start + kBlock);
    std::vector<char> hit(end - start, 0);
#pragma omp parallel for schedule(dynamic, 4) if (parallel && end - start > 8)
    for (std::size_t i = start; i < end; ++i) hit[i - start] = test(i) ? 1 : 0;
    for (std::size_t i = start; i < end; ++i)
      if (hit[i - start]) return i;
  }
  return std::nullopt;
}

}  // namespace qp
