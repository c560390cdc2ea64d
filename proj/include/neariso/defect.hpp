#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "neariso/maps.hpp"
#include "neariso/sampler.hpp"
#include "neariso/space.hpp"

namespace neariso {

/// A sampled supremum. The estimate is attained at `argmax` and is only a
/// lower bound for the true supremum over the whole (unbounded) domain.
struct DefectReport {
  double estimate = 0.0;
  std::vector<Vector> argmax;
  std::size_t samples_used = 0;
  bool is_lower_bound = true;
  /// Set when the map carries a claimed constant: estimate <= claim + 1e-9.
  std::optional<bool> consistent_with_claim;
};

/// Both halves of the onto defect. `onto` is the worst distance from a
/// sampled point of the subspace to the sampled image (argmax = {y, x});
/// `into` is the worst distance from a sampled image point to the subspace
/// (argmax = {x}). `overall` takes the larger of the two.
struct DeltaReport {
  DefectReport overall;
  DefectReport onto;
  DefectReport into;
};

struct SubspaceDistance {
  double distance = 0.0;
  Vector nearest;
  Vector coeffs;
};

/// | ||f(x) - f(y)|| - ||x - y|| | for one pair.
double pair_defect(const MapInstance& f, const Vector& x, const Vector& y);

/// Largest pairwise distortion over the sampler's pairs. Ties keep the first
/// pair in the sampler's enumeration order.
DefectReport estimate_epsilon(const MapInstance& f, const Sampler& sampler);

/// Onto defect of f relative to `target`. Subspace samples are the sampler's
/// pattern applied to the coefficient space, kept inside the ball of radius
/// R - eps - delta for the sampler radius R and the claimed constants (R when
/// no delta is claimed or R is smaller). A subspace point is matched against the images of all
/// domain samples and, when f has a reference isometry U, against f(U^+ y).
DeltaReport estimate_delta(const MapInstance& f, const Subspace& target, const Sampler& sampler);

/// min over v in the subspace of ||y - v||. Orthogonal projection for p = 2;
/// otherwise cyclic golden-section sweeps over the basis coefficients until no
/// coefficient moves by more than 1e-10. For p in {1, inf} only one-dimensional
/// subspaces are accepted: coordinate sweeps can stall at a kink otherwise.
SubspaceDistance distance_to_subspace(const Vector& y, const Subspace& target,
                                      const SpaceSpec& space);

}  // namespace neariso
