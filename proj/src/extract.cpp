#include "qmf/extract.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace qmf {

KSchedule KSchedule::powers_of_two(std::int64_t kmax) {
  KSchedule s;
  for (std::int64_t k = 1; k <= kmax; k *= 2) s.values.push_back(k);
  s.validate();
  return s;
}

void KSchedule::validate() const {
  if (values.empty()) throw ValidationError("schedule is empty");
  std::int64_t prev = 0;
  for (std::int64_t k : values) {
    if (k <= prev) throw ValidationError("schedule must be strictly increasing and positive");
    prev = k;
  }
}

Rational envelope_at(const QmSpec& spec, std::int64_t k) {
  // defect term of the limit formula plus the finite-depth homogenization
  // error, both proportional to the defect bound.
  if (spec.defect_bound == 0) return Rational(0);
  Rational depth_factor = Rational(1) + Rational(2) / Rational(spec.homog_depth);
  return spec.defect_bound * depth_factor / Rational(static_cast<long>(k));
}

namespace {

void run_schedule(const QmSpec& spec, const Word& g1, const Word& g2,
                  const KSchedule& schedule, std::size_t max_letters,
                  ConvergenceReport& report);

// Body of estimate_pair once the spec and schedule are known valid.
ConvergenceReport estimate_pair_checked(const QmSpec& spec, const Word& g1,
                                        const Word& g2,
                                        const KSchedule& schedule,
                                        std::size_t max_letters) {
  if (g1.rank() != spec.rank || g2.rank() != spec.rank)
    throw ValidationError("representative rank does not match spec rank");

  ConvergenceReport report;
  report.gamma1 = abelianize(g1);
  report.gamma2 = abelianize(g2);
  run_schedule(spec, g1, g2, schedule, max_letters, report);
  return report;
}

void run_schedule(const QmSpec& spec, const Word& g1, const Word& g2,
                  const KSchedule& schedule, std::size_t max_letters,
                  ConvergenceReport& report) {
  report.estimates.reserve(schedule.values.size());
  report.envelope.reserve(schedule.values.size());
  for (std::int64_t k : schedule.values) {
    if (g1.size() > 0 &&
        static_cast<std::uint64_t>(k) > (max_letters / 2) / g1.size())
      throw ResourceLimitError("scheduled power exceeds the letter cap");
    Word cmt = k == 1 ? commutator(g1, g2) : commutator(power(g1, k), g2);
    if (cmt.size() > max_letters)
      throw ResourceLimitError("commutator exceeds the letter cap");
    // cmt lies in [F, F] by construction.
    Rational value =
        detail::eval_qm_unchecked(spec, cmt, spec.homog_depth, max_letters);
    if (k != 1) value /= Rational(static_cast<long>(k));
    report.estimates.emplace_back(k, std::move(value));
    if (sgn(spec.defect_bound) == 0)
      report.envelope.emplace_back();  // exact: zero envelope
    else
      report.envelope.push_back(envelope_at(spec, k));
  }
  report.final_estimate = report.estimates.back().second;
  report.certified_radius = report.envelope.back();
}

}  // namespace

ConvergenceReport estimate_pair(const QmSpec& spec, const Word& g1,
                                const Word& g2, const KSchedule& schedule,
                                std::size_t max_letters) {
  spec.validate();
  schedule.validate();
  return estimate_pair_checked(spec, g1, g2, schedule, max_letters);
}

std::vector<Word> default_representatives(int rank) {
  std::vector<Word> reps;
  reps.reserve(static_cast<std::size_t>(rank));
  for (int i = 1; i <= rank; ++i) reps.push_back(Word::generator(rank, i));
  return reps;
}

namespace {

int worker_count() {
  static const int cached = [] {
    if (const char* env = std::getenv("QMFORM_WORKERS")) {
      int n = std::atoi(env);
      if (n >= 1) return n > 64 ? 64 : n;
    }
    return 1;
  }();
  return cached;
}

}  // namespace

ExtractionResult extract_matrix(const QmSpec& spec,
                                const std::vector<Word>& representatives,
                                const KSchedule& schedule,
                                std::size_t max_letters) {
  spec.validate();
  schedule.validate();
  if (static_cast<int>(representatives.size()) != spec.rank)
    throw ValidationError("need exactly one representative per generator");
  std::vector<IntVector> gammas;
  gammas.reserve(representatives.size());
  for (int i = 0; i < spec.rank; ++i) {
    gammas.push_back(abelianize(representatives[static_cast<std::size_t>(i)]));
    for (int j = 0; j < spec.rank; ++j)
      if (gammas.back()[static_cast<std::size_t>(j)] != (i == j ? 1 : 0))
        throw ValidationError("representative " + std::to_string(i + 1) +
                              " does not abelianize to the standard basis vector");
  }

  ExtractionResult result{AltForm(spec.rank), {}, {}};
  for (int i = 0; i < spec.rank; ++i)
    for (int j = i + 1; j < spec.rank; ++j) result.pairs.emplace_back(i, j);

  auto run_pair_into = [&](std::size_t idx, ConvergenceReport& report) {
    auto [i, j] = result.pairs[idx];
    report.gamma1 = gammas[static_cast<std::size_t>(i)];
    report.gamma2 = gammas[static_cast<std::size_t>(j)];
    run_schedule(spec, representatives[static_cast<std::size_t>(i)],
                 representatives[static_cast<std::size_t>(j)], schedule,
                 max_letters, report);
  };

  const int workers = worker_count();
  if (workers <= 1 || result.pairs.size() <= 1) {
    result.reports.reserve(result.pairs.size());
    for (std::size_t idx = 0; idx < result.pairs.size(); ++idx) {
      ConvergenceReport report;
      run_pair_into(idx, report);
      result.reports.push_back(std::move(report));
    }
  } else {
    result.reports.resize(result.pairs.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          std::size_t idx = next.fetch_add(1);
          if (idx >= result.pairs.size()) return;
          try {
            run_pair_into(idx, result.reports[idx]);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
            return;
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }

  for (std::size_t idx = 0; idx < result.pairs.size(); ++idx) {
    auto [i, j] = result.pairs[idx];
    result.form.set(i, j, result.reports[idx].final_estimate);
  }
  return result;
}

ExtendabilityVerdict check_extendable(const AltForm& form,
                                      const std::vector<RatVector>& subspace_basis) {
  for (const auto& v : subspace_basis)
    if (static_cast<int>(v.size()) != form.rank())
      throw ValidationError("basis vector length does not match form rank");
  for (std::size_t i = 0; i < subspace_basis.size(); ++i) {
    for (std::size_t j = i + 1; j < subspace_basis.size(); ++j) {
      Rational value = form.apply(subspace_basis[i], subspace_basis[j]);
      if (value != 0)
        return {false, ExtendabilityVerdict::Witness{subspace_basis[i],
                                                     subspace_basis[j], value}};
    }
  }
  return {true, std::nullopt};
}

std::int64_t form_space_dim(std::int64_t m) {
  if (m < 1) throw ValidationError("dimension must be >= 1");
  return m * (m - 1) / 2;
}

namespace {

struct Sampler {
  std::mt19937_64 rng;
  int rank;

  Word word(int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    return random_reduced_word(rng, rank, len(rng));
  }

  Word nonempty_word(int max_len) {
    std::uniform_int_distribution<int> len(1, max_len);
    return random_reduced_word(rng, rank, len(rng));
  }

  // Random element of the commutator subgroup: a product of two random
  // commutators of short words.
  Word commutator_word() {
    return multiply(commutator(word(4), word(4)), commutator(word(3), word(3)));
  }

  std::int64_t small_k() {
    std::uniform_int_distribution<std::int64_t> d(-8, 8);
    return d(rng);
  }
};

std::string describe(const Word& w) { return "'" + print_word(w) + "'"; }

}  // namespace

HarnessReport property_harness(const QmSpec& spec, std::int64_t trials,
                               std::uint64_t seed) {
  spec.validate();
  if (trials < 1) throw ValidationError("trials must be >= 1");
  HarnessReport report;
  const bool exact = spec.pure_core();
  const KSchedule quick{{1, 4}};
  const Rational env = envelope_at(spec, quick.values.back());

  auto run = [&](const std::string& law, auto&& body) {
    HarnessCheck check{law, 0, 0, ""};
    Sampler sampler{std::mt19937_64(seed ^ std::hash<std::string>{}(law)),
                    spec.rank};
    for (std::int64_t t = 0; t < trials; ++t) {
      ++check.trials;
      std::string counterexample = body(sampler);
      if (!counterexample.empty()) {
        ++check.failures;
        if (check.counterexample.empty()) check.counterexample = counterexample;
      }
    }
    report.checks.push_back(std::move(check));
  };

  run("core-additivity", [&](Sampler& s) -> std::string {
    Word u = s.commutator_word(), v = s.commutator_word();
    if (eval_core(spec.core, multiply(u, v)) !=
        eval_core(spec.core, u) + eval_core(spec.core, v))
      return "u=" + describe(u) + " v=" + describe(v);
    return "";
  });

  run("core-conjugation-invariance", [&](Sampler& s) -> std::string {
    Word w = s.commutator_word(), f = s.word(6);
    Word conj = multiply(multiply(f, w), inverse(f));
    if (eval_core(spec.core, conj) != eval_core(spec.core, w))
      return "w=" + describe(w) + " f=" + describe(f);
    return "";
  });

  run("core-homogeneity", [&](Sampler& s) -> std::string {
    Word w = s.commutator_word();
    std::int64_t k = s.small_k();
    if (eval_core(spec.core, power(w, k)) !=
        Rational(static_cast<long>(k)) * eval_core(spec.core, w))
      return "w=" + describe(w) + " k=" + std::to_string(k);
    return "";
  });

  run("core-commutator-evaluation", [&](Sampler& s) -> std::string {
    Word f1 = s.word(6), f2 = s.word(6);
    IntVector a1 = abelianize(f1), a2 = abelianize(f2);
    RatVector v1(a1.begin(), a1.end()), v2(a2.begin(), a2.end());
    if (eval_core(spec.core, commutator(f1, f2)) != spec.core.apply(v1, v2))
      return "f1=" + describe(f1) + " f2=" + describe(f2);
    return "";
  });

  if (!spec.brooks.empty()) {
    run("brooks-antisymmetry", [&](Sampler& s) -> std::string {
      Word g = s.word(12);
      for (const auto& term : spec.brooks)
        if (eval_brooks(term.pattern, inverse(g)) != -eval_brooks(term.pattern, g))
          return "pattern=" + describe(term.pattern) + " g=" + describe(g);
      return "";
    });

    run("qm-defect-law", [&](Sampler& s) -> std::string {
      Word x = s.commutator_word(), y = s.commutator_word();
      Rational delta = rational_abs(eval_qm(spec, multiply(x, y)) -
                                    eval_qm(spec, x) - eval_qm(spec, y));
      Rational bound =
          spec.defect_bound *
          (Rational(1) + Rational(2) / Rational(spec.homog_depth));
      if (delta > bound) {
        std::ostringstream os;
        os << "x=" << describe(x) << " y=" << describe(y)
           << " delta=" << rational_to_string(delta);
        return os.str();
      }
      return "";
    });
  }

  run("estimate-alternation", [&](Sampler& s) -> std::string {
    Word g1 = s.nonempty_word(3), g2 = s.nonempty_word(3);
    Rational a = estimate_pair(spec, g1, g2, quick).final_estimate;
    Rational b = estimate_pair(spec, g2, g1, quick).final_estimate;
    Rational tol = exact ? Rational(0) : Rational(2) * env;
    if (rational_abs(a + b) > tol)
      return "g1=" + describe(g1) + " g2=" + describe(g2);
    return "";
  });

  run("estimate-bilinearity", [&](Sampler& s) -> std::string {
    Word g1 = s.nonempty_word(3), g1p = s.nonempty_word(3), g2 = s.nonempty_word(3);
    Rational sum = estimate_pair(spec, multiply(g1, g1p), g2, quick).final_estimate;
    Rational parts = estimate_pair(spec, g1, g2, quick).final_estimate +
                     estimate_pair(spec, g1p, g2, quick).final_estimate;
    Rational tol = exact ? Rational(0) : Rational(3) * env;
    if (rational_abs(sum - parts) > tol)
      return "g1=" + describe(g1) + " g1'=" + describe(g1p) + " g2=" + describe(g2);
    return "";
  });

  run("estimate-vanishing-on-commutators", [&](Sampler& s) -> std::string {
    Word g1 = commutator(s.word(3), s.word(3));
    Word g2 = s.nonempty_word(3);
    ConvergenceReport r = estimate_pair(spec, g1, g2, quick);
    for (std::size_t idx = 0; idx < r.estimates.size(); ++idx)
      if (rational_abs(r.estimates[idx].second) > r.envelope[idx])
        return "g1=" + describe(g1) + " g2=" + describe(g2) + " k=" +
               std::to_string(r.estimates[idx].first);
    return "";
  });

  run("estimate-q-scaling", [&](Sampler& s) -> std::string {
    Word g1 = s.nonempty_word(3), g2 = s.nonempty_word(3);
    Rational doubled = estimate_pair(spec, power(g1, 2), g2, quick).final_estimate;
    Rational single = estimate_pair(spec, g1, g2, quick).final_estimate;
    Rational tol = exact ? Rational(0) : Rational(3) * env;
    if (rational_abs(doubled - Rational(2) * single) > tol)
      return "g1=" + describe(g1) + " g2=" + describe(g2);
    return "";
  });

  return report;
}

}  // namespace qmf
