#pragma once

#include <vector>

#include "neariso/linear_operator.hpp"
#include "neariso/maps.hpp"
#include "neariso/space.hpp"

namespace neariso {

/// Records how far along the ray a directional limit was evaluated and the
/// Cauchy-rate bound that certifies the result:
///   rate_bound = (1 + eps/s) * gamma(3 eps / (s + eps)).
struct LimitCertificate {
  double s_used = 0.0;
  double rate_bound = 0.0;
  double tolerance_requested = 0.0;
  double eps = 0.0;
};

/// (1 + eps/s) gamma(3 eps / (s + eps)) in the given codomain; needs s > 2 eps.
double limit_rate_bound(double s, double eps, const SpaceSpec& codomain);

struct DirectionalLimit {
  Vector value;
  LimitCertificate certificate;
};

/// Approximates phi(x) = lim_{s -> inf} f(s x) / s. Along the doubling sequence
/// s = s0, 2 s0, ... with s0 = max(2 eps + 1, 1) the first s whose rate bound is
/// at most `tol` is used, and f(s xhat)/s * ||x|| is returned (xhat = x/||x||).
/// The result is within tol * ||x|| of phi(x). Throws no_convergence if s would
/// pass 2^60.
DirectionalLimit directional_limit(const MapInstance& f, const Vector& x, double tol);

struct IsometryFit {
  LinearOperator op;
  std::vector<LimitCertificate> certificates;
  double isometry_defect = 0.0;
  double linearity_defect = 0.0;
};

/// The linear isometry phi assembled column by column from directional limits
/// along the basis vectors. Checked on a seeded unit-sphere sample (defect at
/// most 2 tol) and, in dimension >= 2, for additivity on e_1 + e_2 (within
/// 3 tol).
IsometryFit build_linear_isometry(const MapInstance& f, double tol);

struct RayFunctional {
  DualVector functional;
  Vector direction;
  double n = 0.0;
  /// Allowance for using the supporting functional at a finite n in place of
  /// a cluster point of the sequence F_n; equals 2 eps / n.
  double slack = 0.0;
};

/// F = j(f(n u)) for the unit direction u of the domain (default e_1). It has
/// norm one and satisfies t - 2 eps <= F f(t u) <= t + eps for 0 <= t <= n.
RayFunctional ray_functional(const MapInstance& f, double n);
RayFunctional ray_functional(const MapInstance& f, double n, const Vector& direction);

/// A projection of norm one onto `k`: orthogonal projection when p = 2; for
/// other p only when k is spanned by disjointly supported vectors, in which
/// case each block is projected along its spanning vector by that vector's
/// norming functional. Entries below 1e-12 of a column's largest entry are
/// treated as outside its support.
LinearOperator norm_one_projection(const SpaceSpec& space, const Subspace& k);

struct LeftInverse {
  LinearOperator t;
  LinearOperator projection;
  LinearOperator isometry;
  std::vector<LimitCertificate> certificates;
  /// Sampled ||T||; equals 1 within 1e-6.
  double norm_estimate = 0.0;
  /// max entry of |T phi - I|; at most 1e-9.
  double inverse_defect = 0.0;
};

/// T = phi^{-1} P with phi from build_linear_isometry and P a norm-one
/// projection onto phi(X).
LeftInverse build_left_inverse_T(const MapInstance& f, double tol);

/// Same, for a given linear isometry phi of the domain into the codomain.
LeftInverse build_left_inverse_T(const MapInstance& f, const LinearOperator& phi);

}  // namespace neariso
