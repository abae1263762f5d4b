#include "qmf/json_io.hpp"

#include <sstream>

namespace qmf {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ValidationError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int require_int(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number_integer())
    throw ValidationError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

}  // namespace

Json rational_to_json(const Rational& q) { return rational_to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ValidationError("rational must be an integer or a 'p/q' string");
}

Json rat_vector_to_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(rational_to_json(q));
  return out;
}

RatVector rat_vector_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("vector must be an array");
  RatVector v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(rational_from_json(e));
  return v;
}

Json int_vector_to_json(const IntVector& v) {
  Json out = Json::array();
  for (auto x : v) out.push_back(x);
  return out;
}

Json alt_form_to_json(const AltForm& form) {
  Json rows = Json::array();
  for (int i = 0; i < form.rank(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < form.rank(); ++j) row.push_back(rational_to_json(form.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

AltForm alt_form_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("form must be an array of rows");
  std::vector<RatVector> rows;
  rows.reserve(j.size());
  for (const auto& row : j) rows.push_back(rat_vector_from_json(row));
  return AltForm::from_rows(rows);
}

Json qmspec_to_json(const QmSpec& spec) {
  Json j;
  j["rank"] = spec.rank;
  j["core"] = alt_form_to_json(spec.core);
  Json brooks = Json::array();
  for (const auto& term : spec.brooks) {
    Json t;
    t["pattern"] = print_word(term.pattern);
    t["weight"] = rational_to_json(term.weight);
    brooks.push_back(std::move(t));
  }
  j["brooks"] = std::move(brooks);
  j["homog_depth"] = spec.homog_depth;
  j["defect_bound"] = rational_to_json(spec.defect_bound);
  return j;
}

QmSpec qmspec_from_json(const Json& j) {
  QmSpec spec{require_int(j, "rank"), AltForm(0), {}, 64, Rational(0)};
  spec.core = alt_form_from_json(require(j, "core"));
  if (j.contains("brooks")) {
    const Json& brooks = j.at("brooks");
    if (!brooks.is_array()) throw ValidationError("'brooks' must be an array");
    for (const auto& t : brooks) {
      Word pattern = parse_word(require(t, "pattern").get<std::string>(), spec.rank);
      Rational weight = rational_from_json(require(t, "weight"));
      spec.brooks.push_back({std::move(pattern), std::move(weight)});
    }
  }
  if (j.contains("homog_depth")) spec.homog_depth = require_int(j, "homog_depth");
  if (j.contains("defect_bound"))
    spec.defect_bound = rational_from_json(j.at("defect_bound"));
  else
    spec.defect_bound = default_defect_bound(spec);
  spec.validate();
  return spec;
}

namespace {

const char* kind_name(ManifoldKind kind) {
  switch (kind) {
    case ManifoldKind::product_of_surfaces: return "product_of_surfaces";
    case ManifoldKind::surface_times_manifold: return "surface_times_manifold";
    case ManifoldKind::torus_blowup: return "torus_blowup";
  }
  return "unknown";
}

ManifoldKind kind_from_name(const std::string& name) {
  if (name == "product_of_surfaces") return ManifoldKind::product_of_surfaces;
  if (name == "surface_times_manifold") return ManifoldKind::surface_times_manifold;
  if (name == "torus_blowup") return ManifoldKind::torus_blowup;
  throw ValidationError("unknown manifold kind '" + name + "'");
}

}  // namespace

Json manifold_to_json(const ManifoldSpec& spec) {
  Json j;
  j["kind"] = kind_name(spec.kind);
  if (!spec.surfaces.empty()) {
    Json surfaces = Json::array();
    for (const auto& s : spec.surfaces) {
      Json e;
      e["genus"] = s.genus;
      e["area"] = rational_to_json(s.area);
      surfaces.push_back(std::move(e));
    }
    j["surfaces"] = std::move(surfaces);
  }
  if (spec.kind == ManifoldKind::surface_times_manifold) {
    j["extra_volume"] = rational_to_json(spec.extra_volume);
    j["extra_curvature"] = rational_to_json(spec.extra_curvature);
    j["extra_half_dim"] = spec.extra_half_dim;
  }
  if (spec.kind == ManifoldKind::torus_blowup) {
    Json b;
    Json radii = Json::array();
    for (const auto& r : spec.blowup.radii) radii.push_back(rational_to_json(r));
    b["radii"] = std::move(radii);
    b["rho"] = rational_to_json(spec.blowup.rho);
    b["r"] = rational_to_json(spec.blowup.r);
    if (spec.blowup.curvature_A)
      b["curvature_A"] = rational_to_json(*spec.blowup.curvature_A);
    j["blowup"] = std::move(b);
  }
  return j;
}

ManifoldSpec manifold_from_json(const Json& j) {
  ManifoldSpec spec;
  spec.kind = kind_from_name(require(j, "kind").get<std::string>());
  if (j.contains("surfaces")) {
    for (const auto& e : j.at("surfaces")) {
      SurfaceSpec s;
      s.genus = require_int(e, "genus");
      s.area = rational_from_json(require(e, "area"));
      spec.surfaces.push_back(std::move(s));
    }
  }
  if (spec.kind == ManifoldKind::surface_times_manifold) {
    spec.extra_volume = rational_from_json(require(j, "extra_volume"));
    spec.extra_curvature = rational_from_json(require(j, "extra_curvature"));
    spec.extra_half_dim = require_int(j, "extra_half_dim");
  }
  if (spec.kind == ManifoldKind::torus_blowup) {
    const Json& b = require(j, "blowup");
    for (const auto& r : require(b, "radii")) spec.blowup.radii.push_back(rational_from_json(r));
    spec.blowup.rho = rational_from_json(require(b, "rho"));
    spec.blowup.r = rational_from_json(require(b, "r"));
    if (b.contains("curvature_A"))
      spec.blowup.curvature_A = rational_from_json(b.at("curvature_A"));
  }
  spec.validate();
  return spec;
}

Json convergence_report_to_json(const ConvergenceReport& report) {
  Json j;
  j["gamma1"] = int_vector_to_json(report.gamma1);
  j["gamma2"] = int_vector_to_json(report.gamma2);
  Json estimates = Json::array();
  for (const auto& [k, value] : report.estimates) {
    Json e;
    e["k"] = k;
    e["estimate"] = rational_to_json(value);
    estimates.push_back(std::move(e));
  }
  j["estimates"] = std::move(estimates);
  Json envelope = Json::array();
  for (const auto& e : report.envelope) envelope.push_back(rational_to_json(e));
  j["envelope"] = std::move(envelope);
  j["final_estimate"] = rational_to_json(report.final_estimate);
  j["certified_radius"] = rational_to_json(report.certified_radius);
  return j;
}

Json extraction_to_json(const ExtractionResult& result) {
  Json j;
  j["rank"] = result.form.rank();
  j["form"] = alt_form_to_json(result.form);
  Json pairs = Json::array();
  for (std::size_t idx = 0; idx < result.pairs.size(); ++idx) {
    Json p = convergence_report_to_json(result.reports[idx]);
    p["i"] = result.pairs[idx].first + 1;
    p["j"] = result.pairs[idx].second + 1;
    pairs.push_back(std::move(p));
  }
  j["pairs"] = std::move(pairs);
  return j;
}

std::string extraction_to_csv(const ExtractionResult& result) {
  std::ostringstream os;
  os << "i,j,k,estimate,envelope\n";
  for (std::size_t idx = 0; idx < result.pairs.size(); ++idx) {
    const auto& report = result.reports[idx];
    for (std::size_t t = 0; t < report.estimates.size(); ++t) {
      os << result.pairs[idx].first + 1 << ',' << result.pairs[idx].second + 1
         << ',' << report.estimates[t].first << ','
         << rational_to_string(report.estimates[t].second) << ','
         << rational_to_string(report.envelope[t]) << '\n';
    }
  }
  return os.str();
}

namespace {

Json witness_to_json(const ExtendabilityVerdict::Witness& w) {
  Json j;
  j["v"] = rat_vector_to_json(w.v);
  j["w"] = rat_vector_to_json(w.w);
  j["value"] = rational_to_json(w.value);
  return j;
}

}  // namespace

Json extendability_to_json(const ExtendabilityVerdict& verdict) {
  Json j;
  j["type"] = "extendable";
  j["extendable"] = verdict.extendable;
  if (verdict.witness) j["witness"] = witness_to_json(*verdict.witness);
  return j;
}

Json commuting_to_json(const CommutingVerdict& verdict) {
  Json j;
  j["type"] = "commute";
  j["value"] = rational_to_json(verdict.value);
  j["obstructed_universal_cover"] = verdict.obstructed_universal_cover;
  switch (verdict.base) {
    case BaseObstruction::not_obstructed: j["base_obstruction"] = "not_obstructed"; break;
    case BaseObstruction::obstructed: j["base_obstruction"] = "obstructed"; break;
    case BaseObstruction::undecided: j["base_obstruction"] = "undecided"; break;
  }
  return j;
}

Json reznikov_to_json(const ReznikovVerdict& verdict) {
  Json j;
  j["type"] = "reznikov";
  j["trivial"] = verdict.trivial;
  Json failing = Json::array();
  if (!verdict.condition_ic1_zero) failing.push_back("condition_1_ic1_nonzero");
  if (!verdict.condition_form_vanishes)
    failing.push_back("condition_2_form_nonzero_on_subspace");
  j["failing_conditions"] = std::move(failing);
  if (verdict.witness) j["witness"] = witness_to_json(*verdict.witness);
  return j;
}

Json predicted_form_to_json(const PredictedForm& predicted) {
  Json j;
  j["rank"] = predicted.form.rank();
  j["form"] = alt_form_to_json(predicted.form);
  j["partial"] = predicted.partial;
  if (predicted.partial)
    j["offblock"] = "unknown";  // entries against the other factor are not claimed
  j["warnings"] = predicted.warnings;
  return j;
}

std::vector<RatVector> parse_vector_list(const std::string& text) {
  std::vector<RatVector> vectors;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ';')) {
    RatVector v;
    std::stringstream entries(group);
    std::string entry;
    while (std::getline(entries, entry, ',')) {
      // trim
      std::size_t b = entry.find_first_not_of(" \t");
      std::size_t e = entry.find_last_not_of(" \t");
      if (b == std::string::npos) throw ValidationError("empty vector entry");
      v.push_back(parse_rational(entry.substr(b, e - b + 1)));
    }
    if (v.empty()) throw ValidationError("empty vector in list");
    vectors.push_back(std::move(v));
  }
  return vectors;
}

}  // namespace qmf
