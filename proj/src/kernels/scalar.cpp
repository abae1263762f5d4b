#include "impl.hpp"

namespace qmf::kernels::detail {

std::int64_t count_pattern_scalar(std::span<const std::int32_t> text,
                                  std::span<const std::int32_t> pattern) {
  const std::size_t n = text.size();
  const std::size_t m = pattern.size();
  if (m == 0 || n < m) return 0;
  std::int64_t count = 0;
  const std::int32_t first = pattern[0];
  for (std::size_t i = 0; i + m <= n; ++i) {
    if (text[i] != first) continue;
    std::size_t j = 1;
    while (j < m && text[i + j] == pattern[j]) ++j;
    if (j == m) ++count;
  }
  return count;
}

std::int64_t shoelace_pair_scalar(std::span<const std::int32_t> word,
                                  std::int32_t gi, std::int32_t gj) {
  std::int64_t pi = 0;
  std::int64_t acc = 0;
  for (std::int32_t l : word) {
    if (l == gj)
      acc += pi;
    else if (l == -gj)
      acc -= pi;
    else if (l == gi)
      ++pi;
    else if (l == -gi)
      --pi;
  }
  return acc;
}

}  // namespace qmf::kernels::detail
