#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace qmf::kernels {

// The two letter-scan loops everything hot sits on: substring counting for
// the Brooks evaluations and the signed-area accumulation for the core
// homomorphism. Scalar reference implementations are the semantics; the AVX2
// variants are selected at runtime and must agree bit-for-bit (all integer
// arithmetic), which tests/test_kernels.cpp enforces.

// Number of (possibly overlapping) occurrences of pattern as a contiguous
// subrange of text. pattern must be nonempty.
std::int64_t count_pattern(std::span<const std::int32_t> text,
                           std::span<const std::int32_t> pattern);

// Signed lattice area of the prefix walk of word for the coordinate pair
// (gi, gj): sum over letters of p[gi] * delta_j, where p[gi] is the running
// signed count of letters +-gi before the letter and delta_j is +-1 when the
// letter is +-gj. Requires gi != gj, both >= 1.
std::int64_t shoelace_pair(std::span<const std::int32_t> word, std::int32_t gi,
                           std::int32_t gj);

enum class Impl { scalar, avx2 };

Impl active_impl();
std::string impl_name(Impl impl);
bool impl_available(Impl impl);

// Overrides dispatch (throws if the implementation is unavailable). The
// initial selection honors the QMFORM_KERNELS environment variable
// ("scalar" or "avx2") and otherwise picks the widest supported variant.
void force_impl(Impl impl);

}  // namespace qmf::kernels
