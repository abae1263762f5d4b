#pragma once

#include <cstdint>
#include <span>

// Internal kernel entry points; the public dispatch lives in qmf/kernels.hpp.

namespace qmf::kernels::detail {

std::int64_t count_pattern_scalar(std::span<const std::int32_t> text,
                                  std::span<const std::int32_t> pattern);
std::int64_t shoelace_pair_scalar(std::span<const std::int32_t> word,
                                  std::int32_t gi, std::int32_t gj);

#if defined(QMFORM_BUILD_AVX2)
std::int64_t count_pattern_avx2(std::span<const std::int32_t> text,
                                std::span<const std::int32_t> pattern);
std::int64_t shoelace_pair_avx2(std::span<const std::int32_t> word,
                                std::int32_t gi, std::int32_t gj);
#endif

}  // namespace qmf::kernels::detail
