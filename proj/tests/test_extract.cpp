#include <doctest.h>

#include <random>

#include "qmf/extract.hpp"

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

AltForm genus2_predicted() {  // -2 * (J + J)
  AltForm f(4);
  f.set(0, 1, Rational(-2));
  f.set(2, 3, Rational(-2));
  return f;
}

RatVector basis_vec(int rank, int i) {
  RatVector v(static_cast<std::size_t>(rank), Rational(0));
  v[static_cast<std::size_t>(i)] = Rational(1);
  return v;
}

std::mt19937_64 make_rng(unsigned s) { return std::mt19937_64(s); }

}  // namespace

TEST_CASE("schedule validation") {
  KSchedule s = KSchedule::powers_of_two(1024);
  REQUIRE(s.values.size() == 11);
  CHECK(s.values.front() == 1);
  CHECK(s.values.back() == 1024);
  KSchedule empty{{}};
  CHECK_THROWS_AS(empty.validate(), ValidationError);
  KSchedule repeated{{2, 2}};
  CHECK_THROWS_AS(repeated.validate(), ValidationError);
  KSchedule nonpositive{{0, 1}};
  CHECK_THROWS_AS(nonpositive.validate(), ValidationError);
}

TEST_CASE("estimate_pair on a pure core is exact at every k") {
  QmSpec pure = make_core_spec(unit_form());
  ConvergenceReport r =
      estimate_pair(pure, w("a"), w("b"), KSchedule::powers_of_two(16));
  for (const auto& [k, est] : r.estimates) CHECK(est == 1);
  for (const auto& env : r.envelope) CHECK(env == 0);
  CHECK(r.final_estimate == 1);
  CHECK(r.certified_radius == 0);
  CHECK(r.gamma1 == IntVector{1, 0});
  CHECK(r.gamma2 == IntVector{0, 1});
}

TEST_CASE("estimate_pair with identity g1 vanishes") {
  ConvergenceReport r = estimate_pair(core_brooks_spec(), Word::identity(2),
                                      w("a b"), KSchedule{{1, 2, 4}});
  for (const auto& [k, est] : r.estimates) CHECK(est == 0);
}

TEST_CASE("estimate_pair matches the frozen convergence sequence") {
  // Frozen pre-build oracle run: estimate(k) = (k+1)/k for this spec.
  ConvergenceReport r = estimate_pair(core_brooks_spec(), w("a"), w("b"),
                                      KSchedule::powers_of_two(1024));
  for (std::size_t t = 0; t < r.estimates.size(); ++t) {
    auto [k, est] = r.estimates[t];
    CHECK(est == Rational(static_cast<long>(k + 1), static_cast<long>(k)));
    CHECK(rational_abs(est - Rational(1)) <= r.envelope[t]);
  }
  CHECK(r.envelope.front() == rat(4191, 1024));  // (127/32)(33/32)
  CHECK(r.final_estimate == rat(1025, 1024));
  for (std::size_t t = 1; t < r.envelope.size(); ++t)
    CHECK(r.envelope[t] < r.envelope[t - 1]);
}

TEST_CASE("estimate_pair errors") {
  CHECK_THROWS_AS(estimate_pair(core_brooks_spec(), parse_word("a", 3), w("b"),
                                KSchedule{{1}}),
                  ValidationError);
  CHECK_THROWS_AS(estimate_pair(core_brooks_spec(), w("a b a b"), w("b"),
                                KSchedule{{4096}}, /*max_letters=*/2000),
                  ResourceLimitError);
}

TEST_CASE("extract_matrix recovers a pure core exactly at schedule {1}") {
  std::mt19937_64 rng = make_rng(77);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int rank : {2, 3, 4}) {
    for (int trial = 0; trial < 25; ++trial) {
      AltForm B(rank);
      for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j) B.set(i, j, Rational(entry(rng)));
      ExtractionResult res = extract_matrix(make_core_spec(B),
                                            default_representatives(rank),
                                            KSchedule{{1}});
      CHECK(res.form == B);
    }
  }
}

TEST_CASE("extract_matrix on the zero spec") {
  ExtractionResult res = extract_matrix(make_core_spec(AltForm(3)),
                                        default_representatives(3),
                                        KSchedule{{1, 2}});
  CHECK(res.form.is_zero());
}

TEST_CASE("extract_matrix kernel decay for a counting-only spec") {
  QmSpec spec{2, AltForm(2), {{w("a b"), Rational(1)}}, 64, rat(127, 32)};
  ExtractionResult res = extract_matrix(spec, default_representatives(2),
                                        KSchedule::powers_of_two(64));
  const ConvergenceReport& r = res.reports[0];
  for (std::size_t t = 0; t < r.estimates.size(); ++t)
    CHECK(rational_abs(r.estimates[t].second) <= r.envelope[t]);
}

TEST_CASE("extract_matrix validates representatives") {
  QmSpec pure = make_core_spec(unit_form());
  CHECK_THROWS_AS(extract_matrix(pure, {w("a"), w("b b")}, KSchedule{{1}}),
                  ValidationError);
  CHECK_THROWS_AS(extract_matrix(pure, {w("a")}, KSchedule{{1}}),
                  ValidationError);
  // Non-generator representatives are fine as long as they abelianize right.
  ExtractionResult res =
      extract_matrix(pure, {w("a b a B A"), w("b a A")}, KSchedule{{1, 2}});
  CHECK(res.form == unit_form());
}

TEST_CASE("check_extendable") {
  AltForm form = genus2_predicted();
  CHECK(check_extendable(form, {basis_vec(4, 0), basis_vec(4, 2)}).extendable);
  CHECK(check_extendable(form, {}).extendable);

  ExtendabilityVerdict bad =
      check_extendable(form, {basis_vec(4, 0), basis_vec(4, 1)});
  CHECK(!bad.extendable);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->value == Rational(-2));
  CHECK(bad.witness->v == basis_vec(4, 0));
  CHECK(bad.witness->w == basis_vec(4, 1));

  CHECK_THROWS_AS(check_extendable(form, {basis_vec(3, 0)}), ValidationError);
}

TEST_CASE("check_extendable agrees with the all-pairs zero test") {
  std::mt19937_64 rng = make_rng(99);
  std::uniform_int_distribution<int> entry(-2, 2);
  std::uniform_int_distribution<int> nvec(0, 3);
  for (int trial = 0; trial < 1000; ++trial) {
    int rank = 2 + static_cast<int>(trial % 3);
    AltForm form(rank);
    for (int i = 0; i < rank; ++i)
      for (int j = i + 1; j < rank; ++j) form.set(i, j, Rational(entry(rng)));
    std::vector<RatVector> basis;
    int nb = nvec(rng);
    for (int b = 0; b < nb; ++b) {
      RatVector v;
      for (int c = 0; c < rank; ++c) v.push_back(Rational(entry(rng)));
      basis.push_back(std::move(v));
    }
    bool brute = true;
    for (const auto& u : basis)
      for (const auto& v : basis)
        if (form.apply(u, v) != 0) brute = false;
    CHECK(check_extendable(form, basis).extendable == brute);
  }
}

TEST_CASE("form_space_dim") {
  CHECK(form_space_dim(2) == 1);
  CHECK(form_space_dim(4) == 6);
  CHECK(form_space_dim(1) == 0);
  CHECK(form_space_dim(10) == 45);
}

TEST_CASE("bilinearity of pure-core extraction") {
  QmSpec pure = make_core_spec(unit_form());
  std::mt19937_64 rng = make_rng(5);
  std::uniform_int_distribution<int> len(1, 5);
  KSchedule sched{{1, 3}};
  for (int t = 0; t < 300; ++t) {
    Word g1 = random_reduced_word(rng, 2, len(rng));
    Word g1p = random_reduced_word(rng, 2, len(rng));
    Word g2 = random_reduced_word(rng, 2, len(rng));
    Rational sum =
        estimate_pair(pure, multiply(g1, g1p), g2, sched).final_estimate;
    CHECK(sum == estimate_pair(pure, g1, g2, sched).final_estimate +
                     estimate_pair(pure, g1p, g2, sched).final_estimate);
  }
}

TEST_CASE("alternation of pure-core extraction") {
  QmSpec pure = make_core_spec(unit_form());
  std::mt19937_64 rng = make_rng(6);
  std::uniform_int_distribution<int> len(1, 5);
  KSchedule sched{{2}};
  for (int t = 0; t < 300; ++t) {
    Word g1 = random_reduced_word(rng, 2, len(rng));
    Word g2 = random_reduced_word(rng, 2, len(rng));
    CHECK(estimate_pair(pure, g1, g2, sched).final_estimate ==
          -estimate_pair(pure, g2, g1, sched).final_estimate);
  }
}

TEST_CASE("generator swap equivariance for rank-2 cores") {
  // theta: a <-> b pulls the core back to P^T B P and pushes the extracted
  // matrix forward the same way; for rank 2 both are just sign flips.
  std::mt19937_64 rng = make_rng(8);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int t = 0; t < 50; ++t) {
    AltForm B(2);
    B.set(0, 1, Rational(entry(rng)));
    AltForm swapped(2);
    swapped.set(0, 1, B.at(1, 0));

    ExtractionResult direct = extract_matrix(
        make_core_spec(B), default_representatives(2), KSchedule{{1}});
    ExtractionResult pulled = extract_matrix(
        make_core_spec(swapped), default_representatives(2), KSchedule{{1}});
    CHECK(pulled.form.at(0, 1) == direct.form.at(1, 0));
  }
}

TEST_CASE("equal cores give vanishing difference forms") {
  AltForm B = unit_form();
  QmSpec spec1{2, B, {{w("a b"), Rational(1)}}, 64, rat(127, 32)};
  QmSpec spec2{2, B, {{w("b a"), rat(1, 2)}, {w("a a"), Rational(1)}},
               64, Rational(8)};
  KSchedule sched = KSchedule::powers_of_two(64);
  ExtractionResult r1 = extract_matrix(spec1, default_representatives(2), sched);
  ExtractionResult r2 = extract_matrix(spec2, default_representatives(2), sched);
  Rational diff = rational_abs(r1.form.at(0, 1) - r2.form.at(0, 1));
  CHECK(diff <= r1.reports[0].certified_radius + r2.reports[0].certified_radius);
}

TEST_CASE("refined limit formula scaling") {
  QmSpec pure = make_core_spec(unit_form());
  KSchedule sched{{1, 4}};
  Rational twice =
      estimate_pair(pure, power(w("a"), 2), w("b"), sched).final_estimate;
  Rational once = estimate_pair(pure, w("a"), w("b"), sched).final_estimate;
  CHECK(twice == Rational(2) * once);
}

TEST_CASE("property harness passes on representative specs") {
  HarnessReport pure = property_harness(make_core_spec(unit_form()), 300);
  CHECK(pure.all_passed());
  HarnessReport zero = property_harness(make_core_spec(AltForm(2)), 200);
  CHECK(zero.all_passed());
  HarnessReport mixed = property_harness(core_brooks_spec(), 150);
  for (const auto& check : mixed.checks) {
    INFO(check.law, ": ", check.counterexample);
    CHECK(check.failures == 0);
  }
}
