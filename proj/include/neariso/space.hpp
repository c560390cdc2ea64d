#pragma once

#include <cstddef>
#include <limits>
#include <string>

#include <Eigen/Dense>

namespace neariso {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// The real space R^dim carrying the p-norm, 1 <= p <= inf.
class SpaceSpec {
public:
  SpaceSpec(std::size_t dim, double p);

  std::size_t dim() const noexcept { return dim_; }
  double p() const noexcept { return p_; }

  /// Exponent q of the dual norm, 1/p + 1/q = 1.
  double conjugate() const noexcept;

  /// True iff 1 < p < inf. For p-norms this is also exactly when the norm is
  /// smooth away from the origin.
  bool uniformly_convex() const noexcept { return p_ > 1.0 && p_ < kInf; }
  bool smooth() const noexcept { return uniformly_convex(); }
  bool hilbert() const noexcept { return p_ == 2.0; }

  /// "l^p_n", with "inf" for the sup norm.
  std::string label() const;

  bool operator==(const SpaceSpec&) const = default;

private:
  std::size_t dim_;
  double p_;
};

/// A functional on R^n acting through the standard pairing.
struct DualVector {
  Vector coords;

  double operator()(const Vector& x) const { return coords.dot(x); }
};

double norm(const Vector& x, const SpaceSpec& space);
double distance(const Vector& x, const Vector& y, const SpaceSpec& space);

/// Norm of a functional, i.e. the q-norm of its coordinates.
double dual_norm(const DualVector& f, const SpaceSpec& space);

/// The duality map j(z): the unique norm-one functional with j(z)z = ||z||.
/// Coincides with the gradient of the norm at z. Requires 1 < p < inf, z != 0.
DualVector support_functional(const Vector& z, const SpaceSpec& space);

/// Modulus of convexity tau(s), s in [0, 2]: the largest depth such that
/// ||x + y|| / 2 <= 1 - tau(s) whenever ||x||, ||y|| <= 1 and ||x - y|| >= s.
///
/// For p >= 2 this is the Clarkson closed form 1 - (1 - (s/2)^p)^(1/p). For
/// 1 < p < 2 there is no closed form and the infimum is computed numerically
/// over the two-dimensional section l^p_2, which contains the extremal pairs.
/// The numerical value is accurate to the angle refinement tolerance 1e-6.
/// The same function serves every dimension: it is the modulus of l^p and a
/// valid (possibly smaller) modulus for l^p_1.
double modulus_of_convexity(double s, const SpaceSpec& space);

/// gamma(t) = sup{ s in [0, 2] : tau(s) <= t } for t in [0, 1], by bisection
/// on the monotone modulus.
double gamma(double t, const SpaceSpec& space);

namespace detail {

double pnorm(const double* x, std::size_t n, double p) noexcept;
double pnorm_diff(const double* x, const double* y, std::size_t n, double p) noexcept;

void require_dim(const Vector& x, const SpaceSpec& space, const char* what);

}  // namespace detail

}  // namespace neariso
