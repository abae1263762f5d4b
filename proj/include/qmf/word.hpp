#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qmf/errors.hpp"

namespace qmf {

// A letter is a signed generator index: +i for x_i, -i for x_i^{-1}, 1 <= i <= rank.
using Letter = std::int32_t;

inline Letter letter_inverse(Letter l) { return -l; }

// Freely reduced word over the free group of a fixed rank. Immutable after
// construction; the letter array never contains an adjacent inverse pair.
class Word {
 public:
  explicit Word(int rank) : rank_(check_rank(rank)) {}

  // Reduces the given letter sequence on the fly.
  Word(int rank, std::span<const Letter> letters);

  static Word identity(int rank) { return Word(rank); }
  static Word generator(int rank, int index, int sign = +1);

  int rank() const { return rank_; }
  std::size_t size() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }
  std::span<const Letter> letters() const { return letters_; }
  Letter letter(std::size_t i) const { return letters_[i]; }

  bool operator==(const Word& other) const {
    return rank_ == other.rank_ && letters_ == other.letters_;
  }

 private:
  static int check_rank(int rank) {
    if (rank < 1) throw ValidationError("word rank must be >= 1");
    return rank;
  }
  friend Word multiply(const Word&, const Word&);
  friend Word inverse(const Word&);
  friend Word power(const Word&, std::int64_t);
  friend Word commutator(const Word&, const Word&);

  int rank_;
  std::vector<Letter> letters_;
};

// Group operations; all results are freely reduced.
Word multiply(const Word& u, const Word& v);
Word inverse(const Word& w);

// w^k via the cyclic-reduction factorization w = c r c^{-1}, so the cost is
// O(|k||r| + |c|) rather than k free reductions. k may be zero or negative.
Word power(const Word& w, std::int64_t k);

// [g1, g2] = g1 g2 g1^{-1} g2^{-1}.
Word commutator(const Word& g1, const Word& g2);

// Factorization w = conj * core * conj^{-1} with core cyclically reduced.
struct CyclicFactorization {
  Word conj;
  Word core;
};
CyclicFactorization cyclic_reduce(const Word& w);

using IntVector = std::vector<std::int64_t>;

// Image of w under the quotient map onto Z^rank (signed letter counts).
IntVector abelianize(const Word& w);
bool is_in_commutator_subgroup(const Word& w);

// The walk in Z^rank traced by the prefixes of w: points[t] is the
// abelianization of the length-t prefix, so points.front() is the origin and
// points.back() equals abelianize(w).
struct LatticePath {
  std::vector<IntVector> points;
};
LatticePath prefix_path(const Word& w);

// Length cap applied by default to every materialized word in the evaluation
// pipeline (parser expansions, powers inside estimators). 10^7 letters keeps
// worst-case resident words near 40 MB.
inline constexpr std::size_t kDefaultMaxLetters = 10'000'000;

// Word grammar: tokens 'a'..'z' (generators 1..26), 'A'..'Z' (inverses),
// 'x<n>'/'X<n>' for arbitrary indices, '^<int>' exponents on tokens or
// parenthesized groups, whitespace-separated or not.
Word parse_word(std::string_view text, int rank,
                std::size_t max_letters = kDefaultMaxLetters);

// Canonical printer; parse_word(print_word(w), w.rank()) == w.
std::string print_word(const Word& w);

// Uniform random freely reduced word of exactly the given length (rejection
// on the forbidden inverse-of-last letter). Deterministic for a fixed rng.
Word random_reduced_word(std::mt19937_64& rng, int rank, int len);

}  // namespace qmf
