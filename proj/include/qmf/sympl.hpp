#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmf/extract.hpp"

namespace qmf {

struct SurfaceSpec {
  int genus = 0;
  Rational area = Rational(1);
};

// Coordinates on first cohomology: each surface (or torus) factor
// contributes one (alpha_i*, beta_i*) pair per handle, factors in input
// order; the blow-up's exceptional divisor contributes nothing.
struct BlowupSpec {
  std::vector<Rational> radii;  // strictly increasing, all positive
  Rational rho;
  Rational r;
  // Average Hermitian scalar curvature of the blown-up manifold. Required
  // input: the construction only guarantees it is nonzero, so it is never
  // derived here.
  std::optional<Rational> curvature_A;
};

enum class ManifoldKind { product_of_surfaces, surface_times_manifold, torus_blowup };

struct ManifoldSpec {
  ManifoldKind kind = ManifoldKind::product_of_surfaces;
  std::vector<SurfaceSpec> surfaces;
  // surface_times_manifold: the closed factor N, entering through its
  // volume, curvature, and half-dimension (so the ambient n is known).
  Rational extra_volume = Rational(1);
  Rational extra_curvature = Rational(0);
  int extra_half_dim = 1;
  BlowupSpec blowup;

  void validate() const;
  // Number of first-cohomology coordinates the predicted form acts on.
  int h1_dim() const;
  // Half-dimension n of the total manifold.
  int half_dim() const;
};

// Intersection form of the closed genus-l surface in the standard basis:
// l diagonal blocks [[0,1],[-1,0]].
AltForm surface_intersection_form(int genus);

// Symplectic pairing of a product of surfaces on its first cohomology:
// block i carries (n-1)! * prod_{j != i} area_j times the intersection form
// of factor i; cross-factor blocks vanish.
AltForm symplectic_pairing_product(const std::vector<SurfaceSpec>& surfaces);

// (2 - 2*genus) / area.
Rational scalar_curvature_surface(const SurfaceSpec& s);

// Additivity over product factors; rejects blow-ups (their curvature is an
// input, never derived).
Rational scalar_curvature_product(const ManifoldSpec& spec);

// Convention Vol(X, w) = integral of w^n: n! * prod(areas) for products,
// n * extra_volume * area for a surface times a manifold, and the volume of
// the underlying torus (n! * prod (2 r_i)^2) for blow-ups.
Rational volume(const ManifoldSpec& spec);

struct PredictedForm {
  AltForm form;
  // surface_times_manifold only determines the surface block of the full
  // form; entries against the other factor's cohomology are unknown, not
  // zero.
  bool partial = false;
  std::vector<std::string> warnings;
};

// The closed-form predictions for the extracted bilinear form:
//   product of surfaces:   block i = Vol(M) (2-2l_i)/area_i^2 * intersection_i
//   surface x manifold:    the surface block of the same expression
//   torus blow-up:         block i = Vol(T) A / (2 r_i)^2 * [[0,1],[-1,0]]
PredictedForm predicted_form(const ManifoldSpec& spec);

using FluxVector = RatVector;

// Value set of the I_{c1} homomorphism, as far as it is decidable: the zero
// map, an infinite cyclic image, or unknown (possibly dense) image.
struct Ic1Model {
  enum class Kind { zero, cyclic, dense_unknown } kind = Kind::zero;
  Rational generator = Rational(0);  // nonzero for cyclic

  static Ic1Model zero() { return {Kind::zero, Rational(0)}; }
  static Ic1Model cyclic(Rational gen);
  static Ic1Model dense_unknown() { return {Kind::dense_unknown, Rational(0)}; }
};

enum class BaseObstruction { not_obstructed, obstructed, undecided };

// Obstruction to commuting symplectomorphisms with the given fluxes:
// a nonzero pairing rules out commuting lifts in the universal cover, and a
// pairing outside the I_{c1} image rules out commuting representatives
// downstairs.
struct CommutingVerdict {
  Rational value;
  bool obstructed_universal_cover;  // value != 0
  BaseObstruction base;
};

CommutingVerdict commuting_obstruction(const AltForm& form, const FluxVector& v,
                                       const FluxVector& w, const Ic1Model& ic1);

// Reznikov-class triviality on the flux subgroup spanned by the basis:
// trivial iff I_{c1} vanishes and the form vanishes on the subspace.
struct ReznikovVerdict {
  bool trivial;
  bool condition_ic1_zero;
  bool condition_form_vanishes;
  std::optional<ExtendabilityVerdict::Witness> witness;
};

ReznikovVerdict reznikov_trivial(bool ic1_is_zero, const AltForm& form,
                                 const std::vector<RatVector>& subspace_basis);

}  // namespace qmf
