#pragma once

#include <json.hpp>

#include "qmf/extract.hpp"
#include "qmf/sympl.hpp"

// Document formats. All rationals are serialized as "p/q" (or plain integer)
// strings so reports stay exact and diffable; matrices are row-major.

namespace qmf {

using Json = nlohmann::json;

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json rat_vector_to_json(const RatVector& v);
RatVector rat_vector_from_json(const Json& j);

Json int_vector_to_json(const IntVector& v);

Json alt_form_to_json(const AltForm& form);
AltForm alt_form_from_json(const Json& j);

Json qmspec_to_json(const QmSpec& spec);
// Missing homog_depth defaults to 64; a missing defect_bound is resolved via
// default_defect_bound (0 for pure-core specs, otherwise twice the
// exhaustive radius-8 lower bound).
QmSpec qmspec_from_json(const Json& j);

Json manifold_to_json(const ManifoldSpec& spec);
ManifoldSpec manifold_from_json(const Json& j);

Json convergence_report_to_json(const ConvergenceReport& report);
Json extraction_to_json(const ExtractionResult& result);
// CSV sidecar: one "i,j,k,estimate,envelope" row per scheduled k per pair.
std::string extraction_to_csv(const ExtractionResult& result);

Json extendability_to_json(const ExtendabilityVerdict& verdict);
Json commuting_to_json(const CommutingVerdict& verdict);
Json reznikov_to_json(const ReznikovVerdict& verdict);
Json predicted_form_to_json(const PredictedForm& predicted);

// Semicolon-separated vector list, entries comma-separated rationals
// ("1,0;0,1/2"); used by the CLI for subspace bases and flux vectors.
std::vector<RatVector> parse_vector_list(const std::string& text);

}  // namespace qmf
