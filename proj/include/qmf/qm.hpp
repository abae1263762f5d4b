#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qmf/alt_form.hpp"
#include "qmf/word.hpp"

namespace qmf {

// One counting term: weight * (occurrences of pattern minus occurrences of
// its inverse) on reduced words.
struct BrooksTerm {
  Word pattern;
  Rational weight;
};

// Declarative invariant quasimorphism on the commutator subgroup of the free
// group of the given rank: the exact homomorphism attached to `core` plus a
// weighted sum of counting quasimorphisms, each homogenized at depth
// homog_depth. defect_bound feeds the error envelopes downstream; it never
// affects the computed values.
struct QmSpec {
  int rank;
  AltForm core;
  std::vector<BrooksTerm> brooks;
  int homog_depth = 64;
  Rational defect_bound = Rational(0);

  bool pure_core() const { return brooks.empty(); }
  void validate() const;
};

QmSpec make_core_spec(AltForm core);

// Signed-area homomorphism h_B on the commutator subgroup:
// sum over i<j of B[i][j] * A_ij(w), with A_ij the lattice shoelace area of
// the prefix walk. Exactly additive, conjugation-invariant, and
// eval_core(B, [f1, f2]) equals B(abelianize(f1), abelianize(f2)).
// Throws ValidationError when w has nonzero abelianization.
Rational eval_core(const AltForm& core, const Word& w);

// Occurrences of pattern in the reduced word g (overlaps allowed) minus
// occurrences of pattern^{-1}; antisymmetric under g -> g^{-1}.
std::int64_t eval_brooks(const Word& pattern, const Word& g);

// Core value plus the depth-K homogenization estimates of the counting
// terms: eval_core(core, w) + sum_i weight_i * eval_brooks(p_i, w^K) / K.
// The finite-depth error against the homogeneous limit is at most
// (sum_i |weight_i| D_i) / K. max_letters caps the materialized w^K.
Rational eval_qm(const QmSpec& spec, const Word& w,
                 std::size_t max_letters = kDefaultMaxLetters);

// Same sum with an overriding depth; for pure-core specs this is independent
// of the depth (homomorphisms are already homogeneous).
Rational homogenize_estimate(const QmSpec& spec, const Word& w, int depth,
                             std::size_t max_letters = kDefaultMaxLetters);

enum class DefectSearchMode { exhaustive, random };

// Witnessed lower bound for the defect of eval_qm on the commutator
// subgroup: lower_bound = |mu(xy) - mu(x) - mu(y)| at the witness pair.
struct DefectEstimate {
  Rational lower_bound;
  Word witness_x;
  Word witness_y;
  int search_radius;
  bool exhaustive;
};

inline constexpr std::int64_t kDefaultMaxDefectPairs = 2'000'000;

// Exhaustive mode scans every ordered pair of commutator-subgroup words of
// length <= max_len (a certified lower bound over that ball); random mode
// samples commutators instead. Throws ResourceLimitError when the exhaustive
// ball would exceed max_pairs ordered pairs.
DefectEstimate estimate_defect(const QmSpec& spec, int max_len,
                               DefectSearchMode mode,
                               std::int64_t samples = 10000,
                               std::int64_t max_pairs = kDefaultMaxDefectPairs,
                               std::uint64_t seed = 0x9e3779b97f4a7c15ull);

// All freely reduced words of length <= max_len with zero abelianization
// (the ball of [F, F] used by the exhaustive defect search). Throws
// ResourceLimitError past max_words.
std::vector<Word> commutator_ball(int rank, int max_len,
                                  std::int64_t max_words);

// 2 * exhaustive lower bound at radius 8 (0 for pure-core specs); the
// default used when a spec document omits defect_bound.
Rational default_defect_bound(const QmSpec& spec);

namespace detail {
// Evaluation body without revalidation; for callers that have already
// checked the spec and know w lies in the commutator subgroup.
Rational eval_qm_unchecked(const QmSpec& spec, const Word& w, int depth,
                           std::size_t max_letters);
}  // namespace detail

}  // namespace qmf
