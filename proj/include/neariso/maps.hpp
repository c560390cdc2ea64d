#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "neariso/linear_operator.hpp"
#include "neariso/sampler.hpp"
#include "neariso/space.hpp"

namespace neariso {

/// span of the columns of `basis` inside `ambient`. The columns must be
/// linearly independent.
class Subspace {
public:
  Subspace(SpaceSpec ambient, Matrix basis);

  /// span{e_0, ..., e_{k-1}}.
  static Subspace leading_axes(const SpaceSpec& ambient, std::size_t k);

  const SpaceSpec& ambient() const noexcept { return ambient_; }
  const Matrix& basis() const noexcept { return basis_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(basis_.cols()); }

  Vector combine(const Vector& coeffs) const;

private:
  SpaceSpec ambient_;
  Matrix basis_;
};

using MapFn = std::function<Vector(const Vector&)>;

/// An evaluable map between two p-normed spaces together with the constants
/// it is claimed to satisfy: the nearisometry defect eps, and optionally the
/// onto defect delta relative to `target_subspace`. `reference` is the linear
/// isometry the instance was built around, when there is one.
struct MapInstance {
  std::string id;
  SpaceSpec domain;
  SpaceSpec codomain;
  MapFn eval;
  double claimed_eps = 0.0;
  std::optional<double> claimed_delta;
  std::optional<Subspace> target_subspace;
  std::optional<LinearOperator> reference;

  Vector operator()(const Vector& x) const;
};

/// f(x) = (x, sqrt(2 eps |x|)) from the line into the Euclidean plane. Its
/// distance from every linear isometry is unbounded. eps = 0 gives the
/// degenerate isometry x -> (x, 0).
MapInstance make_hyers_ulam(double eps);

/// The piecewise map from the line into the plane with the l^1 norm that
/// attains the constant 2 eps + 2 delta:
///   f(t) = (t - eps, 0)          for t < 0
///          (-eps, t)             for 0 < t <= delta
///          (t - delta - eps, delta)  for t >= delta, t != delta + eps
///   f(0) = (0, 0),  f(delta + eps) = (-eps, delta).
MapInstance make_sharp_l1(double eps, double delta);

/// f(t) = (t, g(t)) into the Euclidean plane where g is the ramp
/// 0 for t <= 0, delta t / r on [0, r], delta for t >= r, r = delta^2/(2 eps).
/// delta = 0 (with any eps >= 0) gives the isometry t -> (t, 0).
MapInstance make_ramp_hilbert(double eps, double delta);

/// f(x) = Ux + eta(x) with eta a seeded smooth perturbation,
/// eta(0) = 0 and ||eta(x)|| <= eps / 2, so f is an eps-nearisometry.
MapInstance make_perturbed_isometry(const SpaceSpec& space_in, const SpaceSpec& space_out,
                                    const LinearOperator& u, double eps, std::uint64_t seed);

/// The exact isometry x -> Ux as a map instance (eps = 0).
MapInstance make_linear_map(const LinearOperator& u);

/// x -> f(x) - f(0).
MapInstance normalize_origin(const MapInstance& f);

/// A signed coordinate embedding l^p_n -> l^p_m (n <= m) with seeded choice of
/// target coordinates and signs; its image is a coordinate subspace.
LinearOperator random_coordinate_isometry(const SpaceSpec& domain, const SpaceSpec& codomain,
                                          std::uint64_t seed);

struct CatalogParams {
  std::optional<double> eps;
  std::optional<double> delta;
  double p = 2.0;
  std::size_t dim = 2;
  std::uint64_t seed = kDefaultSeed;
};

/// "hyers-ulam", "sharp-l1", "ramp-hilbert", "perturbed".
const std::vector<std::string>& catalog_ids();

/// Builds a catalog map by identifier. "perturbed" is a perturbed signed
/// coordinate permutation of l^p_dim onto itself.
MapInstance make_catalog_map(std::string_view id, const CatalogParams& params);

}  // namespace neariso
