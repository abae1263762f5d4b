#include "qmf/qm.hpp"

#include <cstdlib>
#include <random>
#include <utility>

#include "qmf/kernels.hpp"

namespace qmf {

void QmSpec::validate() const {
  if (rank < 1) throw ValidationError("spec rank must be >= 1");
  if (core.rank() != rank) throw ValidationError("core rank does not match spec rank");
  if (homog_depth < 1) throw ValidationError("homog_depth must be >= 1");
  if (defect_bound < 0) throw ValidationError("defect_bound must be >= 0");
  for (const auto& term : brooks) {
    if (term.pattern.rank() != rank)
      throw ValidationError("brooks pattern rank does not match spec rank");
    if (term.pattern.is_identity()) throw ValidationError("brooks pattern is empty");
  }
}

QmSpec make_core_spec(AltForm core) {
  QmSpec spec{core.rank(), std::move(core), {}, 64, Rational(0)};
  return spec;
}

namespace {

void require_in_commutator_subgroup(const Word& w) {
  if (!is_in_commutator_subgroup(w))
    throw ValidationError(
        "word has nonzero abelianization (outside the commutator subgroup)");
}

// b * a in one fresh rational: scale the numerator in place, recanonicalize.
Rational int_multiple(const Rational& b, std::int64_t a) {
  Rational out(b);
  mpz_mul_si(mpq_numref(out.get_mpq_t()), mpq_numref(out.get_mpq_t()),
             static_cast<long>(a));
  mpq_canonicalize(out.get_mpq_t());
  return out;
}

// acc += b * a through a caller-provided scratch, avoiding temporaries.
void add_int_multiple(Rational& acc, Rational& scratch, const Rational& b,
                      std::int64_t a) {
  mpq_set(scratch.get_mpq_t(), b.get_mpq_t());
  mpz_mul_si(mpq_numref(scratch.get_mpq_t()), mpq_numref(scratch.get_mpq_t()),
             static_cast<long>(a));
  mpq_canonicalize(scratch.get_mpq_t());
  acc += scratch;
}

Rational& eval_scratch() {
  static thread_local Rational scratch;
  return scratch;
}

// Shared evaluation body. A core with a single nonzero entry goes through
// the dispatched shoelace kernel (the long-word hot path); denser cores use
// one fused pass accumulating every pair area at once, O(rank * |w|).
Rational eval_core_impl(const AltForm& core, const Word& w) {
  const int m = core.rank();
  int nonzero_i = -1, nonzero_j = -1;
  int nonzero_count = 0;
  for (int i = 0; i < m && nonzero_count < 2; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (sgn(core.at(i, j)) != 0) {
        nonzero_i = i;
        nonzero_j = j;
        if (++nonzero_count == 2) break;
      }
    }
  }
  if (nonzero_count == 0) return Rational(0);
  if (nonzero_count == 1) {
    std::int64_t area =
        kernels::shoelace_pair(w.letters(), nonzero_i + 1, nonzero_j + 1);
    if (area == 0) return Rational(0);
    return int_multiple(core.at(nonzero_i, nonzero_j), area);
  }

  constexpr int kStackRank = 8;
  std::int64_t pos_buf[kStackRank] = {0};
  std::int64_t area_buf[kStackRank * kStackRank] = {0};
  std::vector<std::int64_t> pos_heap, area_heap;
  std::int64_t* pos = pos_buf;
  std::int64_t* area = area_buf;
  if (m > kStackRank) {
    pos_heap.assign(static_cast<std::size_t>(m), 0);
    area_heap.assign(static_cast<std::size_t>(m) * m, 0);
    pos = pos_heap.data();
    area = area_heap.data();
  }
  for (Letter l : w.letters()) {
    const int g = l < 0 ? -l : l;
    const std::int64_t s = l < 0 ? -1 : 1;
    // The letter moves coordinate g, so only areas A_{i,g} with i < g pick
    // up a term p_i * s.
    for (int i = 0; i < g - 1; ++i) area[i * m + (g - 1)] += pos[i] * s;
    pos[g - 1] += s;
  }
  Rational acc(0);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const Rational& b = core.at(i, j);
      if (sgn(b) == 0) continue;
      std::int64_t a = area[i * m + j];
      if (a != 0) add_int_multiple(acc, eval_scratch(), b, a);
    }
  }
  return acc;
}

}  // namespace

Rational eval_core(const AltForm& core, const Word& w) {
  if (core.rank() != w.rank())
    throw ValidationError("core rank does not match word rank");
  require_in_commutator_subgroup(w);
  return eval_core_impl(core, w);
}

std::int64_t eval_brooks(const Word& pattern, const Word& g) {
  if (pattern.is_identity()) throw ValidationError("empty pattern");
  if (pattern.rank() != g.rank())
    throw ValidationError("pattern rank does not match word rank");
  Word inv = inverse(pattern);
  return kernels::count_pattern(g.letters(), pattern.letters()) -
         kernels::count_pattern(g.letters(), inv.letters());
}

namespace detail {

// Assumes spec already validated and w in the commutator subgroup of the
// right rank; the public wrappers check.
Rational eval_qm_unchecked(const QmSpec& spec, const Word& w, int depth,
                           std::size_t max_letters) {
  Rational value = eval_core_impl(spec.core, w);
  if (!spec.brooks.empty()) {
    if (w.size() > 0 &&
        static_cast<std::uint64_t>(depth) > max_letters / w.size())
      throw ResourceLimitError("homogenization power exceeds the letter cap");
    Word wk = power(w, depth);
    Rational counting(0);
    for (const auto& term : spec.brooks) {
      std::int64_t c = eval_brooks(term.pattern, wk);
      if (c != 0) add_int_multiple(counting, eval_scratch(), term.weight, c);
    }
    if (sgn(counting) != 0) value += counting / Rational(depth);
  }
  return value;
}

}  // namespace detail

Rational homogenize_estimate(const QmSpec& spec, const Word& w, int depth,
                             std::size_t max_letters) {
  spec.validate();
  if (depth < 1) throw ValidationError("homogenization depth must be >= 1");
  if (w.rank() != spec.rank)
    throw ValidationError("word rank does not match spec rank");
  require_in_commutator_subgroup(w);
  return detail::eval_qm_unchecked(spec, w, depth, max_letters);
}

Rational eval_qm(const QmSpec& spec, const Word& w, std::size_t max_letters) {
  return homogenize_estimate(spec, w, spec.homog_depth, max_letters);
}

std::vector<Word> commutator_ball(int rank, int max_len, std::int64_t max_words) {
  if (rank < 1) throw ValidationError("rank must be >= 1");
  if (max_len < 0) throw ValidationError("max_len must be >= 0");
  std::vector<Word> ball;
  ball.push_back(Word::identity(rank));

  std::vector<Letter> stack;
  std::vector<std::int64_t> ab(static_cast<std::size_t>(rank), 0);
  std::int64_t l1 = 0;  // L1 norm of the current abelianization

  auto dfs = [&](auto&& self) -> void {
    if (l1 == 0 && !stack.empty()) {
      if (static_cast<std::int64_t>(ball.size()) >= max_words)
        throw ResourceLimitError("commutator ball exceeds the enumeration cap");
      ball.emplace_back(rank, std::span<const Letter>(stack));
    }
    if (static_cast<int>(stack.size()) == max_len) return;
    // Residual letters must be able to cancel the current abelianization.
    if (l1 > max_len - static_cast<int>(stack.size())) return;
    for (int g = 1; g <= rank; ++g) {
      for (int sign : {+1, -1}) {
        Letter l = static_cast<Letter>(sign * g);
        if (!stack.empty() && stack.back() == -l) continue;
        std::size_t gi = static_cast<std::size_t>(g - 1);
        l1 -= std::abs(ab[gi]);
        ab[gi] += sign;
        l1 += std::abs(ab[gi]);
        stack.push_back(l);
        self(self);
        stack.pop_back();
        l1 -= std::abs(ab[gi]);
        ab[gi] -= sign;
        l1 += std::abs(ab[gi]);
      }
    }
  };
  dfs(dfs);
  return ball;
}

DefectEstimate estimate_defect(const QmSpec& spec, int max_len,
                               DefectSearchMode mode, std::int64_t samples,
                               std::int64_t max_pairs, std::uint64_t seed) {
  spec.validate();
  if (max_len < 1) throw ValidationError("max_len must be >= 1");

  DefectEstimate best{Rational(0), Word::identity(spec.rank),
                      Word::identity(spec.rank), max_len,
                      mode == DefectSearchMode::exhaustive};

  auto consider = [&](const Word& x, const Word& y, const Rational& mu_x,
                      const Rational& mu_y) {
    Rational delta = rational_abs(eval_qm(spec, multiply(x, y)) - mu_x - mu_y);
    if (delta > best.lower_bound) {
      best.lower_bound = delta;
      best.witness_x = x;
      best.witness_y = y;
    }
  };

  if (mode == DefectSearchMode::exhaustive) {
    std::int64_t max_words = 1;
    while (max_words * max_words < max_pairs) ++max_words;
    std::vector<Word> ball = commutator_ball(spec.rank, max_len, max_words);
    std::vector<Rational> values;
    values.reserve(ball.size());
    for (const Word& w : ball) values.push_back(eval_qm(spec, w));
    for (std::size_t i = 0; i < ball.size(); ++i)
      for (std::size_t j = 0; j < ball.size(); ++j)
        consider(ball[i], ball[j], values[i], values[j]);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> len_dist(1, std::max(1, max_len / 4));
    for (std::int64_t s = 0; s < samples; ++s) {
      Word x = commutator(random_reduced_word(rng, spec.rank, len_dist(rng)),
                          random_reduced_word(rng, spec.rank, len_dist(rng)));
      Word y = commutator(random_reduced_word(rng, spec.rank, len_dist(rng)),
                          random_reduced_word(rng, spec.rank, len_dist(rng)));
      if (static_cast<int>(x.size()) > max_len || static_cast<int>(y.size()) > max_len)
        continue;
      consider(x, y, eval_qm(spec, x), eval_qm(spec, y));
    }
  }
  return best;
}

Rational default_defect_bound(const QmSpec& spec) {
  if (spec.pure_core()) return Rational(0);
  QmSpec probe = spec;
  probe.defect_bound = Rational(0);
  DefectEstimate est = estimate_defect(probe, 8, DefectSearchMode::exhaustive);
  return Rational(2) * est.lower_bound;
}

}  // namespace qmf
