#include "qmf/alt_form.hpp"

namespace qmf {

AltForm AltForm::from_rows(const std::vector<RatVector>& rows) {
  const int rank = static_cast<int>(rows.size());
  AltForm f(rank);
  for (int i = 0; i < rank; ++i) {
    if (static_cast<int>(rows[i].size()) != rank)
      throw ValidationError("form matrix is not square");
    for (int j = 0; j < rank; ++j)
      f.entries_[static_cast<std::size_t>(i) * rank + j] = rows[i][j];
  }
  for (int i = 0; i < rank; ++i) {
    if (f.at(i, i) != 0) throw ValidationError("form has a nonzero diagonal entry");
    for (int j = i + 1; j < rank; ++j)
      if (f.at(i, j) != -f.at(j, i))
        throw ValidationError("form matrix is not antisymmetric at (" +
                              std::to_string(i) + "," + std::to_string(j) + ")");
  }
  return f;
}

Rational AltForm::apply(std::span<const Rational> v, std::span<const Rational> w) const {
  if (static_cast<int>(v.size()) != rank_ || static_cast<int>(w.size()) != rank_)
    throw ValidationError("vector length does not match form rank");
  Rational acc(0);
  for (int i = 0; i < rank_; ++i) {
    if (v[static_cast<std::size_t>(i)] == 0) continue;
    Rational row(0);
    for (int j = 0; j < rank_; ++j) {
      const Rational& e = at(i, j);
      if (e != 0 && w[static_cast<std::size_t>(j)] != 0)
        row += e * w[static_cast<std::size_t>(j)];
    }
    acc += v[static_cast<std::size_t>(i)] * row;
  }
  return acc;
}

AltForm& AltForm::operator+=(const AltForm& other) {
  if (rank_ != other.rank_) throw ValidationError("form rank mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

AltForm AltForm::operator-() const {
  AltForm out(rank_);
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = -entries_[i];
  return out;
}

AltForm operator-(const AltForm& a, const AltForm& b) {
  if (a.rank_ != b.rank_) throw ValidationError("form rank mismatch");
  AltForm out(a.rank_);
  for (std::size_t i = 0; i < a.entries_.size(); ++i)
    out.entries_[i] = a.entries_[i] - b.entries_[i];
  return out;
}

AltForm operator*(const Rational& c, const AltForm& f) {
  AltForm out(f.rank_);
  for (std::size_t i = 0; i < f.entries_.size(); ++i) out.entries_[i] = c * f.entries_[i];
  return out;
}

AltForm block_diag(const std::vector<AltForm>& blocks) {
  int rank = 0;
  for (const auto& b : blocks) rank += b.rank();
  AltForm out(rank);
  int offset = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.rank(); ++i)
      for (int j = i + 1; j < b.rank(); ++j)
        out.set(offset + i, offset + j, b.at(i, j));
    offset += b.rank();
  }
  return out;
}

}  // namespace qmf
