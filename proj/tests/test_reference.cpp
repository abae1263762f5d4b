#include <doctest.h>

#include <random>

#include "qmf/extract.hpp"
#include "qmf/reference.hpp"

using namespace qmf;

namespace {

Word w(const std::string& text, int rank = 2) { return parse_word(text, rank); }

AltForm unit_form() {
  AltForm f(2);
  f.set(0, 1, Rational(1));
  return f;
}

QmSpec core_brooks_spec() {
  return QmSpec{2, unit_form(), {{w("a b"), Rational(1)}}, 64, rat(127, 32)};
}

Word random_commutator_word(std::mt19937_64& rng, int rank = 2) {
  std::uniform_int_distribution<int> len(0, 4);
  auto rw = [&] { return random_reduced_word(rng, rank, len(rng)); };
  return multiply(commutator(rw(), rw()), commutator(rw(), rw()));
}

}  // namespace

TEST_CASE("shoelace_area oracle") {
  CHECK(reference::shoelace_area(commutator(w("a"), w("b")), 1, 2) == 1);
  CHECK(reference::shoelace_area(Word::identity(2), 1, 2) == 0);
  CHECK(reference::shoelace_area(
            commutator(power(w("a"), 2), power(w("b"), 3)), 1, 2) == 6);
  CHECK_THROWS_AS(reference::shoelace_area(w("a"), 1, 2), ValidationError);
  CHECK_THROWS_AS(reference::shoelace_area(Word::identity(2), 1, 1),
                  ValidationError);
}

TEST_CASE("naive_count oracle") {
  CHECK(reference::naive_count(w("a b"), w("a b a b")) == 2);
  CHECK(reference::naive_count(w("a b"), Word::identity(2)) == 0);
  CHECK(reference::naive_count(w("a"), w("A")) == -1);
  CHECK_THROWS_AS(reference::naive_count(Word::identity(2), w("a")),
                  ValidationError);
}

TEST_CASE("bruteforce_pair oracle") {
  QmSpec pure = make_core_spec(unit_form());
  CHECK(reference::bruteforce_pair(pure, w("a"), w("b"), 7) == 1);
  QmSpec zero = make_core_spec(AltForm(2));
  CHECK(reference::bruteforce_pair(zero, w("a b"), w("b"), 3) == 0);
  CHECK(reference::bruteforce_pair(pure, w("b"), w("a"), 5) == -1);
}

TEST_CASE("exhaustive_defect oracle (frozen radius-6 value)") {
  CHECK(reference::exhaustive_defect(make_core_spec(unit_form()), 4) == 0);
  CHECK(reference::exhaustive_defect(make_core_spec(AltForm(2)), 4) == 0);
  CHECK(reference::exhaustive_defect(core_brooks_spec(), 6) == rat(127, 64));
}

TEST_CASE("oracle caps") {
  reference::OracleConfig tight;
  tight.max_word_length = 10;
  CHECK_THROWS_AS(
      reference::bruteforce_pair(core_brooks_spec(), w("a"), w("b"), 64, tight),
      ResourceLimitError);
  reference::OracleConfig tiny;
  tiny.max_enumeration = 4;
  CHECK_THROWS_AS(reference::exhaustive_defect(core_brooks_spec(), 6, tiny),
                  ResourceLimitError);
}

TEST_CASE("eval_core equals the shoelace oracle") {
  std::mt19937_64 rng(101);
  AltForm B(3);
  B.set(0, 1, rat(3, 2));
  B.set(0, 2, Rational(-1));
  B.set(1, 2, Rational(7));
  for (int t = 0; t < 10000; ++t) {
    Word x = random_commutator_word(rng, 3);
    Rational via_oracle(0);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        via_oracle += B.at(i, j) * Rational(static_cast<long>(
                                       reference::shoelace_area(x, i + 1, j + 1)));
    CHECK(eval_core(B, x) == via_oracle);
  }
}

TEST_CASE("eval_brooks equals the naive counting oracle") {
  std::mt19937_64 rng(103);
  std::uniform_int_distribution<int> len(0, 30);
  std::uniform_int_distribution<int> plen(1, 5);
  for (int t = 0; t < 10000; ++t) {
    Word p = random_reduced_word(rng, 2, plen(rng));
    Word g = random_reduced_word(rng, 2, len(rng));
    CHECK(eval_brooks(p, g) == reference::naive_count(p, g));
  }
}

TEST_CASE("estimate_pair equals bruteforce_pair at every scheduled k") {
  std::mt19937_64 rng(107);
  std::uniform_int_distribution<int> len(1, 3);
  QmSpec spec = core_brooks_spec();
  KSchedule sched{{1, 2, 4, 8}};
  for (int t = 0; t < 60; ++t) {
    Word g1 = random_reduced_word(rng, 2, len(rng));
    Word g2 = random_reduced_word(rng, 2, len(rng));
    ConvergenceReport r = estimate_pair(spec, g1, g2, sched);
    for (const auto& [k, est] : r.estimates)
      CHECK(est == reference::bruteforce_pair(spec, g1, g2, k));
  }
}
