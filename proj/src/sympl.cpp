#include "qmf/sympl.hpp"

namespace qmf {

namespace {

Rational factorial(int n) {
  Rational f(1);
  for (int i = 2; i <= n; ++i) f *= Rational(i);
  return f;
}

AltForm j_block() {
  AltForm j(2);
  j.set(0, 1, Rational(1));
  return j;
}

}  // namespace

void ManifoldSpec::validate() const {
  switch (kind) {
    case ManifoldKind::product_of_surfaces: {
      if (surfaces.empty()) throw ValidationError("product needs at least one surface");
      for (const auto& s : surfaces) {
        if (s.area <= 0) throw ValidationError("surface area must be positive");
        if (s.genus < 1)
          throw ValidationError("product-of-surfaces factors need genus >= 1");
      }
      return;
    }
    case ManifoldKind::surface_times_manifold: {
      if (surfaces.size() != 1)
        throw ValidationError("surface_times_manifold takes exactly one surface");
      if (surfaces[0].area <= 0) throw ValidationError("surface area must be positive");
      if (surfaces[0].genus < 1)
        throw ValidationError("surface factor needs genus >= 1");
      if (extra_volume <= 0) throw ValidationError("extra factor volume must be positive");
      if (extra_half_dim < 1)
        throw ValidationError("extra factor half-dimension must be >= 1");
      return;
    }
    case ManifoldKind::torus_blowup: {
      if (!surfaces.empty())
        throw ValidationError("torus_blowup takes no surface list");
      if (blowup.radii.size() < 2)
        throw ValidationError("torus blow-up needs at least two radii");
      if (!(0 < blowup.rho && blowup.rho < blowup.r && blowup.r < blowup.radii.front()))
        throw ValidationError("blow-up parameters must satisfy 0 < rho < r < r_1");
      Rational prev(0);
      for (const auto& radius : blowup.radii) {
        if (radius <= prev)
          throw ValidationError("blow-up radii must be strictly increasing and positive");
        prev = radius;
      }
      return;
    }
  }
  throw ValidationError("unknown manifold kind");
}

int ManifoldSpec::h1_dim() const {
  switch (kind) {
    case ManifoldKind::product_of_surfaces: {
      int dim = 0;
      for (const auto& s : surfaces) dim += 2 * s.genus;
      return dim;
    }
    case ManifoldKind::surface_times_manifold:
      return 2 * surfaces[0].genus;
    case ManifoldKind::torus_blowup:
      return 2 * static_cast<int>(blowup.radii.size());
  }
  return 0;
}

int ManifoldSpec::half_dim() const {
  switch (kind) {
    case ManifoldKind::product_of_surfaces:
      return static_cast<int>(surfaces.size());
    case ManifoldKind::surface_times_manifold:
      return 1 + extra_half_dim;
    case ManifoldKind::torus_blowup:
      return static_cast<int>(blowup.radii.size());
  }
  return 0;
}

AltForm surface_intersection_form(int genus) {
  if (genus < 0) throw ValidationError("genus must be >= 0");
  std::vector<AltForm> blocks(static_cast<std::size_t>(genus), j_block());
  return block_diag(blocks);
}

AltForm symplectic_pairing_product(const std::vector<SurfaceSpec>& surfaces) {
  if (surfaces.empty()) throw ValidationError("need at least one surface");
  const int n = static_cast<int>(surfaces.size());
  std::vector<AltForm> blocks;
  blocks.reserve(surfaces.size());
  for (int i = 0; i < n; ++i) {
    if (surfaces[static_cast<std::size_t>(i)].area <= 0)
      throw ValidationError("surface area must be positive");
    Rational coeff = factorial(n - 1);
    for (int j = 0; j < n; ++j)
      if (j != i) coeff *= surfaces[static_cast<std::size_t>(j)].area;
    blocks.push_back(coeff *
                     surface_intersection_form(surfaces[static_cast<std::size_t>(i)].genus));
  }
  return block_diag(blocks);
}

Rational scalar_curvature_surface(const SurfaceSpec& s) {
  if (s.area <= 0) throw ValidationError("surface area must be positive");
  return Rational(2 - 2 * s.genus) / s.area;
}

Rational scalar_curvature_product(const ManifoldSpec& spec) {
  spec.validate();
  if (spec.kind == ManifoldKind::torus_blowup)
    throw ValidationError("blow-up curvature is an input, not derived");
  Rational total(0);
  for (const auto& s : spec.surfaces) total += scalar_curvature_surface(s);
  if (spec.kind == ManifoldKind::surface_times_manifold) total += spec.extra_curvature;
  return total;
}

Rational volume(const ManifoldSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case ManifoldKind::product_of_surfaces: {
      Rational vol = factorial(static_cast<int>(spec.surfaces.size()));
      for (const auto& s : spec.surfaces) vol *= s.area;
      return vol;
    }
    case ManifoldKind::surface_times_manifold:
      return Rational(spec.half_dim()) * spec.extra_volume * spec.surfaces[0].area;
    case ManifoldKind::torus_blowup: {
      Rational vol = factorial(static_cast<int>(spec.blowup.radii.size()));
      for (const auto& radius : spec.blowup.radii) {
        Rational side = Rational(2) * radius;
        vol *= side * side;
      }
      return vol;
    }
  }
  throw ValidationError("unknown manifold kind");
}

PredictedForm predicted_form(const ManifoldSpec& spec) {
  spec.validate();
  PredictedForm out{AltForm(0), false, {}};
  const Rational vol = volume(spec);

  switch (spec.kind) {
    case ManifoldKind::product_of_surfaces: {
      // The product expression covers genus 1 outright (torus factors just
      // contribute zero blocks); no hypothesis flag needed here.
      std::vector<AltForm> blocks;
      for (const auto& s : spec.surfaces) {
        Rational coeff = vol * Rational(2 - 2 * s.genus) / (s.area * s.area);
        blocks.push_back(coeff * surface_intersection_form(s.genus));
      }
      out.form = block_diag(blocks);
      return out;
    }
    case ManifoldKind::surface_times_manifold: {
      const SurfaceSpec& s = spec.surfaces[0];
      // The surface-block expression is stated under a genus >= 2 hypothesis
      // in one formulation and genus >= 1 in another; surface both readings.
      if (s.genus == 1)
        out.warnings.push_back(
            "genus-1 surface: the surface-block expression also carries a "
            "genus >= 2 hypothesis in one formulation (the block is zero "
            "either way)");
      Rational coeff = vol * Rational(2 - 2 * s.genus) / (s.area * s.area);
      out.form = coeff * surface_intersection_form(s.genus);
      out.partial = true;  // only the surface block of the full form is known
      return out;
    }
    case ManifoldKind::torus_blowup: {
      if (!spec.blowup.curvature_A.has_value())
        throw ValidationError("torus blow-up needs curvature_A");
      std::vector<AltForm> blocks;
      for (const auto& radius : spec.blowup.radii) {
        Rational area = (Rational(2) * radius) * (Rational(2) * radius);
        Rational coeff = vol * *spec.blowup.curvature_A / area;
        blocks.push_back(coeff * j_block());
      }
      out.form = block_diag(blocks);
      return out;
    }
  }
  throw ValidationError("unknown manifold kind");
}

Ic1Model Ic1Model::cyclic(Rational gen) {
  if (gen == 0) throw ValidationError("cyclic I_c1 model needs a nonzero generator");
  return {Kind::cyclic, std::move(gen)};
}

CommutingVerdict commuting_obstruction(const AltForm& form, const FluxVector& v,
                                       const FluxVector& w, const Ic1Model& ic1) {
  Rational x = form.apply(v, w);
  CommutingVerdict verdict{x, x != 0, BaseObstruction::not_obstructed};
  if (x == 0) return verdict;  // zero always lies in the image
  switch (ic1.kind) {
    case Ic1Model::Kind::zero:
      verdict.base = BaseObstruction::obstructed;
      break;
    case Ic1Model::Kind::cyclic: {
      Rational q = x / ic1.generator;
      verdict.base = q.get_den() == 1 ? BaseObstruction::not_obstructed
                                      : BaseObstruction::obstructed;
      break;
    }
    case Ic1Model::Kind::dense_unknown:
      verdict.base = BaseObstruction::undecided;
      break;
  }
  return verdict;
}

ReznikovVerdict reznikov_trivial(bool ic1_is_zero, const AltForm& form,
                                 const std::vector<RatVector>& subspace_basis) {
  ExtendabilityVerdict ext = check_extendable(form, subspace_basis);
  ReznikovVerdict verdict{ic1_is_zero && ext.extendable, ic1_is_zero,
                          ext.extendable, ext.witness};
  return verdict;
}

}  // namespace qmf
