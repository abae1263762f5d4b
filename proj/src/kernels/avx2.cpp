#include <immintrin.h>

#include "impl.hpp"

// 8-lane int32 variants of the letter-scan kernels. Letters are small signed
// ints, so the counting masks and the in-register prefix sums stay exact; the
// wide accumulations happen in int64 outside the vector loop.

namespace qmf::kernels::detail {

namespace {

inline std::int32_t hsum_epi32(__m256i v) {
  __m128i lo = _mm256_castsi256_si128(v);
  __m128i hi = _mm256_extracti128_si256(v, 1);
  __m128i s = _mm_add_epi32(lo, hi);
  s = _mm_add_epi32(s, _mm_shuffle_epi32(s, _MM_SHUFFLE(1, 0, 3, 2)));
  s = _mm_add_epi32(s, _mm_shuffle_epi32(s, _MM_SHUFFLE(2, 3, 0, 1)));
  return _mm_cvtsi128_si32(s);
}

// Inclusive prefix sum across the 8 lanes.
inline __m256i scan_epi32(__m256i x) {
  x = _mm256_add_epi32(x, _mm256_slli_si256(x, 4));
  x = _mm256_add_epi32(x, _mm256_slli_si256(x, 8));
  __m256i low = _mm256_permute2x128_si256(x, x, 0x08);  // [0 | low half]
  low = _mm256_shuffle_epi32(low, _MM_SHUFFLE(3, 3, 3, 3));
  return _mm256_add_epi32(x, low);
}

}  // namespace

std::int64_t count_pattern_avx2(std::span<const std::int32_t> text,
                                std::span<const std::int32_t> pattern) {
  const std::size_t n = text.size();
  const std::size_t m = pattern.size();
  if (m == 0 || n < m) return 0;
  const std::size_t starts = n - m + 1;
  std::int64_t count = 0;
  std::size_t i = 0;
  for (; i + 8 <= starts; i += 8) {
    __m256i hit = _mm256_cmpeq_epi32(
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(text.data() + i)),
        _mm256_set1_epi32(pattern[0]));
    for (std::size_t j = 1; j < m; ++j) {
      if (_mm256_testz_si256(hit, hit)) break;
      __m256i eq = _mm256_cmpeq_epi32(
          _mm256_loadu_si256(
              reinterpret_cast<const __m256i*>(text.data() + i + j)),
          _mm256_set1_epi32(pattern[j]));
      hit = _mm256_and_si256(hit, eq);
    }
    count += __builtin_popcount(static_cast<unsigned>(
        _mm256_movemask_ps(_mm256_castsi256_ps(hit))));
  }
  for (; i < starts; ++i) {
    std::size_t j = 0;
    while (j < m && text[i + j] == pattern[j]) ++j;
    if (j == m) ++count;
  }
  return count;
}

std::int64_t shoelace_pair_avx2(std::span<const std::int32_t> word,
                                std::int32_t gi, std::int32_t gj) {
  const std::size_t n = word.size();
  const __m256i plus_i = _mm256_set1_epi32(gi);
  const __m256i minus_i = _mm256_set1_epi32(-gi);
  const __m256i plus_j = _mm256_set1_epi32(gj);
  const __m256i minus_j = _mm256_set1_epi32(-gj);

  std::int64_t acc = 0;
  std::int64_t pi = 0;  // running signed count of +-gi letters
  std::size_t t = 0;
  for (; t + 8 <= n; t += 8) {
    __m256i v =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(word.data() + t));
    // cmpeq yields -1 per hit, so minus-hits minus plus-hits gives +-1 steps.
    __m256i inc_i = _mm256_sub_epi32(_mm256_cmpeq_epi32(v, minus_i),
                                     _mm256_cmpeq_epi32(v, plus_i));
    __m256i inc_j = _mm256_sub_epi32(_mm256_cmpeq_epi32(v, minus_j),
                                     _mm256_cmpeq_epi32(v, plus_j));
    __m256i incl = scan_epi32(inc_i);
    __m256i excl = _mm256_sub_epi32(incl, inc_i);
    __m256i contrib = _mm256_mullo_epi32(excl, inc_j);
    acc += pi * static_cast<std::int64_t>(hsum_epi32(inc_j));
    acc += hsum_epi32(contrib);
    pi += _mm256_extract_epi32(incl, 7);
  }
  for (; t < n; ++t) {
    std::int32_t l = word[t];
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
