#include "qmf/reference.hpp"

#include <stdexcept>

namespace qmf::reference {

namespace {

// Plain repeated multiplication; no cyclic-reduction shortcut.
Word slow_power(const Word& w, std::int64_t k, const OracleConfig& config) {
  Word base = k < 0 ? inverse(w) : w;
  std::int64_t reps = k < 0 ? -k : k;
  Word acc = Word::identity(w.rank());
  for (std::int64_t i = 0; i < reps; ++i) {
    acc = multiply(acc, base);
    if (acc.size() > config.max_word_length)
      throw ResourceLimitError("oracle power exceeds the oracle word cap");
  }
  return acc;
}

}  // namespace

std::int64_t shoelace_area(const Word& w, int gi, int gj,
                           const OracleConfig& config) {
  if (gi < 1 || gj < 1 || gi == gj)
    throw ValidationError("shoelace_area needs two distinct generators");
  if (gi > w.rank() || gj > w.rank())
    throw ValidationError("generator exceeds word rank");
  if (!is_in_commutator_subgroup(w))
    throw ValidationError("shoelace_area needs a word with zero abelianization");
  if (w.size() > config.max_word_length)
    throw ResourceLimitError("word exceeds the oracle word cap");

  // Walk the prefix path once, accumulating both conventions:
  //   convention 1:  sum p_t[i] * (p_{t+1}[j] - p_t[j])
  //   convention 2:  sum (p_t[i] + p_{t+1}[i]) * (p_{t+1}[j] - p_t[j]), halved.
  std::int64_t pi = 0, pj = 0;
  std::int64_t area = 0;
  std::int64_t twice_trapezoid = 0;
  for (Letter l : w.letters()) {
    std::int64_t prev_pi = pi, prev_pj = pj;
    if (l == gi)
      ++pi;
    else if (l == -gi)
      --pi;
    else if (l == gj)
      ++pj;
    else if (l == -gj)
      --pj;
    area += prev_pi * (pj - prev_pj);
    twice_trapezoid += (prev_pi + pi) * (pj - prev_pj);
  }
  if (twice_trapezoid % 2 != 0 || twice_trapezoid / 2 != area)
    throw std::logic_error("shoelace conventions disagree on a lattice loop");

  return area;
}

std::int64_t naive_count(const Word& pattern, const Word& g) {
  if (pattern.is_identity()) throw ValidationError("empty pattern");
  auto occurrences = [&](const Word& p) {
    std::int64_t c = 0;
    if (g.size() < p.size()) return c;
    for (std::size_t start = 0; start + p.size() <= g.size(); ++start) {
      bool match = true;
      for (std::size_t t = 0; t < p.size(); ++t) {
        if (g.letter(start + t) != p.letter(t)) {
          match = false;
          break;
        }
      }
      if (match) ++c;
    }
    return c;
  };
  return occurrences(pattern) - occurrences(inverse(pattern));
}

Rational eval_oracle(const QmSpec& spec, const Word& w,
                     const OracleConfig& config) {
  spec.validate();
  if (w.rank() != spec.rank)
    throw ValidationError("word rank does not match spec rank");
  if (!is_in_commutator_subgroup(w))
    throw ValidationError("word has nonzero abelianization");

  Rational value(0);
  for (int i = 0; i < spec.rank; ++i)
    for (int j = i + 1; j < spec.rank; ++j)
      if (spec.core.at(i, j) != 0)
        value += spec.core.at(i, j) *
                 Rational(static_cast<long>(shoelace_area(w, i + 1, j + 1, config)));

  if (!spec.brooks.empty()) {
    Word wk = slow_power(w, spec.homog_depth, config);
    Rational counting(0);
    for (const auto& term : spec.brooks)
      counting += term.weight *
                  Rational(static_cast<long>(naive_count(term.pattern, wk)));
    value += counting / Rational(spec.homog_depth);
  }
  return value;
}

Rational bruteforce_pair(const QmSpec& spec, const Word& g1, const Word& g2,
                         std::int64_t k, const OracleConfig& config) {
  if (k < 1) throw ValidationError("k must be >= 1");
  Word gk = slow_power(g1, k, config);
  Word cmt = multiply(multiply(gk, g2), multiply(inverse(gk), inverse(g2)));
  if (cmt.size() > config.max_word_length)
    throw ResourceLimitError("oracle commutator exceeds the oracle word cap");
  return eval_oracle(spec, cmt, config) / Rational(static_cast<long>(k));
}

Rational exhaustive_defect(const QmSpec& spec, int max_len,
                           const OracleConfig& config) {
  if (max_len < 1) throw ValidationError("max_len must be >= 1");
  std::int64_t max_words = 1;
  while (max_words * max_words < config.max_enumeration) ++max_words;
  std::vector<Word> ball = commutator_ball(spec.rank, max_len, max_words);
  std::vector<Rational> values;
  values.reserve(ball.size());
  for (const Word& w : ball) values.push_back(eval_oracle(spec, w, config));

  Rational best(0);
  for (std::size_t i = 0; i < ball.size(); ++i) {
    for (std::size_t j = 0; j < ball.size(); ++j) {
      Rational delta = rational_abs(eval_oracle(spec, multiply(ball[i], ball[j]), config) -
                                    values[i] - values[j]);
      if (delta > best) best = delta;
    }
  }
  return best;
}

}  // namespace qmf::reference
