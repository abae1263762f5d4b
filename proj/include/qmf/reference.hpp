#pragma once

#include "qmf/qm.hpp"

// Brute-force oracles for cross-checking the fast paths. These share only
// the Word type and group operations with the rest of the library: no
// kernels, no eval_* functions, and deliberately naive algorithms.

namespace qmf::reference {

struct OracleConfig {
  std::size_t max_word_length = 200'000;
  std::int64_t max_enumeration = kDefaultMaxDefectPairs;
};

// Signed lattice area A_ij of the prefix walk, computed with both the
// sum p[i] * dp[j] discretization and the trapezoid rule; the two must agree
// on lattice loops (they differ by a boundary term that vanishes there), and
// disagreement throws. Generators gi, gj are 1-based and distinct.
std::int64_t shoelace_area(const Word& w, int gi, int gj,
                           const OracleConfig& config = {});

// Quadratic-time occurrence count of pattern minus its inverse in g.
std::int64_t naive_count(const Word& pattern, const Word& g);

// mu([g1^k, g2]) / k recomputed from the oracle primitives only, with plain
// repeated multiplication for all powers.
Rational bruteforce_pair(const QmSpec& spec, const Word& g1, const Word& g2,
                         std::int64_t k, const OracleConfig& config = {});

// Exact maximum of |mu(xy) - mu(x) - mu(y)| over all ordered pairs of
// commutator-subgroup words of length <= max_len, via the oracle evaluation.
Rational exhaustive_defect(const QmSpec& spec, int max_len,
                           const OracleConfig& config = {});

// Oracle evaluation of the quasimorphism itself (shared by the two entry
// points above).
Rational eval_oracle(const QmSpec& spec, const Word& w,
                     const OracleConfig& config = {});

}  // namespace qmf::reference
