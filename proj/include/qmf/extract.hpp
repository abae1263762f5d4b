#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmf/qm.hpp"

namespace qmf {

// Strictly increasing exponents k at which mu([g1^k, g2]) / k is evaluated.
struct KSchedule {
  std::vector<std::int64_t> values;

  static KSchedule powers_of_two(std::int64_t kmax = 1024);
  void validate() const;
};

// The full estimate sequence for one pair, with the rigorous error envelope
// defect_bound * (1 + 2/K) / k at each scheduled k. The tool reports the
// whole sequence rather than declaring convergence: the final estimate is
// exact only up to certified_radius, the envelope at the last k.
struct ConvergenceReport {
  IntVector gamma1;
  IntVector gamma2;
  std::vector<std::pair<std::int64_t, Rational>> estimates;
  std::vector<Rational> envelope;
  Rational final_estimate;
  Rational certified_radius;
};

Rational envelope_at(const QmSpec& spec, std::int64_t k);

// mu([g1^k, g2]) / k for each scheduled k, evaluated exactly. For pure-core
// specs every estimate equals the bilinear form value already at k = 1.
ConvergenceReport estimate_pair(const QmSpec& spec, const Word& g1,
                                const Word& g2, const KSchedule& schedule,
                                std::size_t max_letters = kDefaultMaxLetters);

struct ExtractionResult {
  AltForm form;
  // Reports for the pairs (i, j), i < j, in row-major order.
  std::vector<ConvergenceReport> reports;
  std::vector<std::pair<int, int>> pairs;
};

// Assembles the full alternating matrix from the limit-formula estimates on
// representative words; representatives[i] must abelianize to the i-th
// standard basis vector. Pair evaluations fan out over QMFORM_WORKERS
// threads (default 1) and join deterministically.
ExtractionResult extract_matrix(const QmSpec& spec,
                                const std::vector<Word>& representatives,
                                const KSchedule& schedule,
                                std::size_t max_letters = kDefaultMaxLetters);

std::vector<Word> default_representatives(int rank);

// Verdict for restriction-vanishing questions: extendable == true iff the
// form vanishes on the span of the basis; otherwise a witnessing pair of
// basis vectors with nonzero pairing.
struct ExtendabilityVerdict {
  bool extendable;
  struct Witness {
    RatVector v;
    RatVector w;
    Rational value;
  };
  std::optional<Witness> witness;
};

// Exact zero-test of the form on the rational span of the basis vectors
// (bilinearity reduces the span to the basis pairs).
ExtendabilityVerdict check_extendable(const AltForm& form,
                                      const std::vector<RatVector>& subspace_basis);

// Dimension m(m-1)/2 of the space of alternating forms on an m-dimensional
// space.
std::int64_t form_space_dim(std::int64_t m);

// Randomized validation of the algebraic laws the extracted forms satisfy;
// failures carry a printable counterexample. Exact laws (additivity,
// conjugation invariance, homogeneity, alternation and bilinearity for
// pure-core specs) are checked with zero tolerance; defect-limited laws are
// checked against the envelope.
struct HarnessCheck {
  std::string law;
  std::int64_t trials = 0;
  std::int64_t failures = 0;
  std::string counterexample;  // empty when the law held
};

struct HarnessReport {
  std::vector<HarnessCheck> checks;
  bool all_passed() const {
    for (const auto& c : checks)
      if (c.failures != 0) return false;
    return true;
  }
};

HarnessReport property_harness(const QmSpec& spec, std::int64_t trials,
                               std::uint64_t seed = 0x5bd1e995u);

}  // namespace qmf
