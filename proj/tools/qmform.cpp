#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "qmf/json_io.hpp"
#include "qmf/kernels.hpp"
#include "qmf/reference.hpp"
#include "sha256.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using qmf::Json;

struct ManifestBuilder {
  std::string command;
  Json inputs = Json::object();
  Json outputs = Json::array();
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  std::string read_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qmf::ValidationError("cannot read input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    inputs[path] = "sha256:" + qmf_cli::sha256_hex(text);
    return text;
  }

  void note_inline_input(const std::string& name, const std::string& value) {
    inputs[name] = "sha256:" + qmf_cli::sha256_hex(value);
  }

  Json finish() {
    Json m;
    m["command"] = command;
    m["tool_version"] = kVersion;
    m["inputs"] = inputs;
    m["outputs"] = outputs;
    m["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    m["timestamp"] = stamp;
    return m;
  }
};

void write_report(Json report, ManifestBuilder& manifest, const std::string& out_path) {
  if (!out_path.empty()) manifest.outputs.push_back(out_path);
  report["manifest"] = manifest.finish();
  std::string body = report.dump(2);
  body.push_back('\n');
  if (out_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw qmf::ValidationError("cannot write output file '" + out_path + "'");
  out << body;
}

void write_text(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qmf::ValidationError("cannot write output file '" + path + "'");
  out << text;
}

Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw qmf::ValidationError("malformed JSON in " + what + ": " + e.what());
  }
}

std::vector<qmf::Word> parse_reps(const std::string& reps, int rank,
                                  std::size_t max_letters) {
  std::vector<qmf::Word> words;
  std::stringstream ss(reps);
  std::string item;
  while (std::getline(ss, item, ';'))
    words.push_back(qmf::parse_word(item, rank, max_letters));
  return words;
}

qmf::Ic1Model parse_ic1(const std::string& text) {
  if (text == "zero") return qmf::Ic1Model::zero();
  if (text == "dense") return qmf::Ic1Model::dense_unknown();
  if (text.rfind("cyclic:", 0) == 0)
    return qmf::Ic1Model::cyclic(qmf::parse_rational(text.substr(7)));
  throw qmf::ValidationError("--ic1 must be 'zero', 'dense', or 'cyclic:p/q'");
}

// The form a decide subcommand operates on: either a raw matrix document or
// the predicted form of a manifold document.
qmf::AltForm load_form(ManifestBuilder& manifest, const std::string& form_path,
                       const std::string& manifold_path) {
  if (form_path.empty() == manifold_path.empty())
    throw qmf::ValidationError("pass exactly one of --form or --manifold");
  if (!form_path.empty()) {
    Json j = parse_json_text(manifest.read_input(form_path), form_path);
    return qmf::alt_form_from_json(j.contains("form") ? j.at("form") : j);
  }
  Json j = parse_json_text(manifest.read_input(manifold_path), manifold_path);
  return qmf::predicted_form(qmf::manifold_from_json(j)).form;
}

int run_selftest();

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bilinear forms from invariant quasimorphisms on free groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string spec_path, manifold_path, form_path, reps = "", out_path, csv_path;
  std::string basis_text, basis_file, v_text, w_text, ic1_text = "zero";
  std::int64_t kmax = 1024;
  std::string schedule_text;
  std::size_t max_letters = qmf::kDefaultMaxLetters;
  bool ic1_zero = true;

  auto* extract = app.add_subcommand("extract",
                                     "Extract the bilinear form from a quasimorphism spec");
  extract->add_option("--spec", spec_path, "QmSpec JSON document")->required();
  extract->add_option("--reps", reps,
                      "Semicolon-separated representative words (default: generators)");
  extract->add_option("--kmax", kmax, "Largest k in the power-of-two schedule");
  extract->add_option("--schedule", schedule_text,
                      "Explicit comma-separated schedule (overrides --kmax)");
  extract->add_option("--out", out_path, "Report path (stdout if omitted)");
  extract->add_option("--csv", csv_path, "Optional CSV sidecar of (i,j,k,estimate,envelope)");
  extract->add_option("--max-letters", max_letters, "Word length cap");

  auto* predict = app.add_subcommand("predict",
                                     "Predicted form for a manifold document");
  predict->add_option("--manifold", manifold_path, "ManifoldSpec JSON document")->required();
  predict->add_option("--out", out_path, "Report path (stdout if omitted)");

  auto* decide = app.add_subcommand("decide", "Decision procedures");
  decide->require_subcommand(1);
  auto add_form_opts = [&](CLI::App* cmd) {
    cmd->add_option("--form", form_path, "Form JSON document (matrix or {form: ...})");
    cmd->add_option("--manifold", manifold_path,
                    "ManifoldSpec JSON document (uses its predicted form)");
    cmd->add_option("--out", out_path, "Report path (stdout if omitted)");
  };
  auto* ext = decide->add_subcommand("extendable", "Does the form vanish on the subspace?");
  add_form_opts(ext);
  ext->add_option("--basis", basis_text, "Inline basis: \"1,0;0,1\"");
  ext->add_option("--basis-file", basis_file, "JSON array of vectors");
  auto* rez = decide->add_subcommand("reznikov", "Reznikov-class triviality");
  add_form_opts(rez);
  rez->add_option("--basis", basis_text, "Inline basis: \"1,0;0,1\"");
  rez->add_option("--basis-file", basis_file, "JSON array of vectors");
  rez->add_option("--ic1-zero", ic1_zero, "Whether the I_c1 homomorphism vanishes")
      ->required();
  auto* com = decide->add_subcommand("commute", "Obstruction to commuting fluxes");
  add_form_opts(com);
  com->add_option("--v", v_text, "First flux vector, comma-separated")->required();
  com->add_option("--w", w_text, "Second flux vector, comma-separated")->required();
  com->add_option("--ic1", ic1_text, "I_c1 image model: zero | dense | cyclic:p/q");

  auto* selftest = app.add_subcommand("selftest", "Oracle cross-checks");
  selftest->group("");  // hidden

  try {
    app.parse(argc, argv);

    if (selftest->parsed()) return run_selftest();

    if (extract->parsed()) {
      ManifestBuilder manifest;
      manifest.command = "extract";
      Json spec_json = parse_json_text(manifest.read_input(spec_path), spec_path);
      qmf::QmSpec spec = qmf::qmspec_from_json(spec_json);
      std::vector<qmf::Word> representatives =
          reps.empty() ? qmf::default_representatives(spec.rank)
                       : parse_reps(reps, spec.rank, max_letters);
      if (!reps.empty()) manifest.note_inline_input("reps", reps);
      qmf::KSchedule schedule = qmf::KSchedule::powers_of_two(kmax);
      if (!schedule_text.empty()) {
        schedule.values.clear();
        std::stringstream ss(schedule_text);
        std::string item;
        while (std::getline(ss, item, ',')) {
          try {
            schedule.values.push_back(std::stoll(item));
          } catch (const std::exception&) {
            throw qmf::ValidationError("malformed schedule entry '" + item + "'");
          }
        }
        schedule.validate();
      }
      qmf::ExtractionResult result =
          qmf::extract_matrix(spec, representatives, schedule, max_letters);
      Json report = qmf::extraction_to_json(result);
      report["spec"] = qmf::qmspec_to_json(spec);
      if (!csv_path.empty()) {
        write_text(qmf::extraction_to_csv(result), csv_path);
        manifest.outputs.push_back(csv_path);
      }
      write_report(std::move(report), manifest, out_path);
      return 0;
    }

    if (predict->parsed()) {
      ManifestBuilder manifest;
      manifest.command = "predict";
      Json mj = parse_json_text(manifest.read_input(manifold_path), manifold_path);
      qmf::ManifoldSpec spec = qmf::manifold_from_json(mj);
      Json report = qmf::predicted_form_to_json(qmf::predicted_form(spec));
      report["volume"] = qmf::rational_to_json(qmf::volume(spec));
      if (spec.kind != qmf::ManifoldKind::torus_blowup)
        report["curvature"] = qmf::rational_to_json(qmf::scalar_curvature_product(spec));
      write_report(std::move(report), manifest, out_path);
      return 0;
    }

    ManifestBuilder manifest;
    std::vector<qmf::RatVector> basis;
    auto load_basis = [&] {
      if (!basis_text.empty() && !basis_file.empty())
        throw qmf::ValidationError("pass only one of --basis / --basis-file");
      if (!basis_file.empty()) {
        Json j = parse_json_text(manifest.read_input(basis_file), basis_file);
        for (const auto& v : j) basis.push_back(qmf::rat_vector_from_json(v));
      } else if (!basis_text.empty()) {
        basis = qmf::parse_vector_list(basis_text);
        manifest.note_inline_input("basis", basis_text);
      }
    };

    if (ext->parsed()) {
      manifest.command = "decide extendable";
      qmf::AltForm form = load_form(manifest, form_path, manifold_path);
      load_basis();
      write_report(qmf::extendability_to_json(qmf::check_extendable(form, basis)),
                   manifest, out_path);
      return 0;
    }
    if (rez->parsed()) {
      manifest.command = "decide reznikov";
      qmf::AltForm form = load_form(manifest, form_path, manifold_path);
      load_basis();
      write_report(qmf::reznikov_to_json(qmf::reznikov_trivial(ic1_zero, form, basis)),
                   manifest, out_path);
      return 0;
    }
    if (com->parsed()) {
      manifest.command = "decide commute";
      qmf::AltForm form = load_form(manifest, form_path, manifold_path);
      auto vs = qmf::parse_vector_list(v_text);
      auto ws = qmf::parse_vector_list(w_text);
      if (vs.size() != 1 || ws.size() != 1)
        throw qmf::ValidationError("--v and --w each take a single vector");
      manifest.note_inline_input("v", v_text);
      manifest.note_inline_input("w", w_text);
      write_report(qmf::commuting_to_json(qmf::commuting_obstruction(
                       form, vs[0], ws[0], parse_ic1(ic1_text))),
                   manifest, out_path);
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const qmf::ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const qmf::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

namespace {

int run_selftest() {
  using namespace qmf;
  int failures = 0;
  auto check = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "[ok] " : "[FAIL] ") << what << "\n";
    if (!ok) ++failures;
  };

  std::cout << "kernels: " << kernels::impl_name(kernels::active_impl()) << "\n";

  AltForm unit(2);
  unit.set(0, 1, Rational(1));
  QmSpec spec{2, unit, {{parse_word("a b", 2), Rational(1)}}, 64, rat(127, 32)};

  std::mt19937_64 rng(0xA5A5);
  std::uniform_int_distribution<int> len(0, 20);
  bool brooks_ok = true, core_ok = true;
  for (int t = 0; t < 3000; ++t) {
    Word g = random_reduced_word(rng, 2, len(rng));
    if (eval_brooks(spec.brooks[0].pattern, g) !=
        reference::naive_count(spec.brooks[0].pattern, g))
      brooks_ok = false;
    Word c = commutator(random_reduced_word(rng, 2, 4), random_reduced_word(rng, 2, 4));
    if (eval_core(unit, c) != Rational(static_cast<long>(reference::shoelace_area(c, 1, 2))))
      core_ok = false;
  }
  check(brooks_ok, "eval_brooks == naive_count on 3000 random words");
  check(core_ok, "eval_core == shoelace_area on 3000 random commutators");

  Word a = parse_word("a", 2), b = parse_word("b", 2);
  bool pair_ok = true;
  for (std::int64_t k : {1, 2, 4, 8, 16}) {
    Rational fast = estimate_pair(spec, a, b, KSchedule{{k}}).final_estimate;
    if (fast != reference::bruteforce_pair(spec, a, b, k)) pair_ok = false;
  }
  check(pair_ok, "estimate_pair == bruteforce_pair at k in {1..16}");

  check(reference::exhaustive_defect(spec, 6) == rat(127, 64),
        "exhaustive_defect radius 6 reproduces the frozen value 127/64");

  HarnessReport harness = property_harness(spec, 200);
  for (const auto& c : harness.checks)
    check(c.failures == 0, "harness law '" + c.law + "' (" +
                               std::to_string(c.trials) + " trials)");

  std::cout << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace
