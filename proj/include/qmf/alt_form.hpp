#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qmf/errors.hpp"
#include "qmf/rational.hpp"

namespace qmf {

using RatVector = std::vector<Rational>;

// Antisymmetric rank x rank matrix of exact rationals; the representation of
// every bilinear form in the library (cores, extracted forms, symplectic
// pairings, predicted forms). Antisymmetry is a construction invariant:
// set(i, j, v) writes both (i, j) and (j, i).
class AltForm {
 public:
  explicit AltForm(int rank) : rank_(check_rank(rank)) {
    entries_.resize(static_cast<std::size_t>(rank_) * rank_);  // zeros
  }

  // Validates antisymmetry (zero diagonal included).
  static AltForm from_rows(const std::vector<RatVector>& rows);

  int rank() const { return rank_; }

  const Rational& at(int i, int j) const {
    check_index(i);
    check_index(j);
    return entries_[static_cast<std::size_t>(i) * rank_ + j];
  }

  void set(int i, int j, const Rational& value) {
    check_index(i);
    check_index(j);
    if (i == j) {
      if (value != 0) throw ValidationError("alternating form has zero diagonal");
      return;
    }
    entries_[static_cast<std::size_t>(i) * rank_ + j] = value;
    mpq_neg(entries_[static_cast<std::size_t>(j) * rank_ + i].get_mpq_t(),
            value.get_mpq_t());
  }

  // v^T F w, exact.
  Rational apply(std::span<const Rational> v, std::span<const Rational> w) const;

  bool is_zero() const {
    for (const auto& e : entries_)
      if (e != 0) return false;
    return true;
  }

  AltForm& operator+=(const AltForm& other);
  AltForm operator-() const;
  friend AltForm operator-(const AltForm& a, const AltForm& b);
  friend AltForm operator*(const Rational& c, const AltForm& f);

  bool operator==(const AltForm& other) const {
    return rank_ == other.rank_ && entries_ == other.entries_;
  }

 private:
  static int check_rank(int rank) {
    if (rank < 0) throw ValidationError("form rank must be >= 0");
    return rank;
  }
  void check_index(int i) const {
    if (i < 0 || i >= rank_) throw ValidationError("form index out of range");
  }

  int rank_;
  std::vector<Rational> entries_;
};

// Direct sum, used to assemble block-diagonal forms.
AltForm block_diag(const std::vector<AltForm>& blocks);

}  // namespace qmf
