#include "neariso/space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "neariso/error.hpp"
#include "neariso/golden.hpp"

namespace neariso {

SpaceSpec::SpaceSpec(std::size_t dim, double p) : dim_(dim), p_(p) {
  if (dim == 0) throw Error(Errc::invalid_argument, "space dimension must be positive");
  if (!(p >= 1.0)) throw Error(Errc::invalid_argument, "norm exponent must satisfy p >= 1");
}

double SpaceSpec::conjugate() const noexcept {
  if (p_ == 1.0) return kInf;
  if (p_ == kInf) return 1.0;
  return p_ / (p_ - 1.0);
}

std::string SpaceSpec::label() const {
  std::ostringstream os;
  os << "l^";
  if (p_ == kInf) {
    os << "inf";
  } else {
    os << p_;
  }
  os << "_" << dim_;
  return os.str();
}

namespace detail {

namespace {

template <class Coord>
double pnorm_impl(std::size_t n, double p, Coord coord) noexcept {
  if (p == 2.0) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += coord(i) * coord(i);
    return std::sqrt(acc);
  }
  if (p == 1.0) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::abs(coord(i));
    return acc;
  }
  double largest = 0.0;
  for (std::size_t i = 0; i < n; ++i) largest = std::max(largest, std::abs(coord(i)));
  if (p == kInf || largest == 0.0) return largest;
  // Scale by the largest entry so that |x_i|^p stays representable.
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::pow(std::abs(coord(i)) / largest, p);
  return largest * std::pow(acc, 1.0 / p);
}

}  // namespace

double pnorm(const double* x, std::size_t n, double p) noexcept {
  return pnorm_impl(n, p, [x](std::size_t i) { return x[i]; });
}

double pnorm_diff(const double* x, const double* y, std::size_t n, double p) noexcept {
  return pnorm_impl(n, p, [x, y](std::size_t i) { return x[i] - y[i]; });
}

void require_dim(const Vector& x, const SpaceSpec& space, const char* what) {
  if (static_cast<std::size_t>(x.size()) != space.dim()) {
    std::ostringstream os;
    os << what << " has " << x.size() << " coordinates, expected " << space.dim() << " for "
       << space.label();
    throw Error(Errc::dimension_mismatch, os.str());
  }
}

}  // namespace detail

double norm(const Vector& x, const SpaceSpec& space) {
  detail::require_dim(x, space, "vector");
  return detail::pnorm(x.data(), space.dim(), space.p());
}

double distance(const Vector& x, const Vector& y, const SpaceSpec& space) {
  detail::require_dim(x, space, "vector");
  detail::require_dim(y, space, "vector");
  return detail::pnorm_diff(x.data(), y.data(), space.dim(), space.p());
}

double dual_norm(const DualVector& f, const SpaceSpec& space) {
  detail::require_dim(f.coords, space, "functional");
  return detail::pnorm(f.coords.data(), space.dim(), space.conjugate());
}

DualVector support_functional(const Vector& z, const SpaceSpec& space) {
  detail::require_dim(z, space, "vector");
  if (!space.smooth()) {
    throw Error(Errc::not_smooth,
                "supporting functional is not unique in " + space.label() + " (need 1 < p < inf)");
  }
  const double nz = norm(z, space);
  if (nz == 0.0) throw Error(Errc::invalid_argument, "supporting functional at the zero vector");
  const double p = space.p();
  DualVector j{Vector(z.size())};
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double a = std::abs(z[i]) / nz;
    const double mag = (p == 2.0) ? a : std::pow(a, p - 1.0);
    j.coords[i] = z[i] < 0.0 ? -mag : (z[i] > 0.0 ? mag : 0.0);
  }
  return j;
}

namespace {

void require_uniformly_convex(const SpaceSpec& space, const char* what) {
  if (!space.uniformly_convex()) {
    throw Error(Errc::not_uniformly_convex,
                std::string(what) + " requires 1 < p < inf, got " + space.label());
  }
}

struct Point2 {
  double a;
  double b;
};

double norm2(double a, double b, double p) noexcept {
  const double xs[2] = {a, b};
  return detail::pnorm(xs, 2, p);
}

// Unit vector of l^p_2 in the Euclidean direction theta.
Point2 unit_point(double theta, double p) noexcept {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double n = norm2(c, s, p);
  return {c / n, s / n};
}

// For x = unit_point(theta), find the unit y further along the circle with
// ||x - y|| = s and return 1 - ||x + y|| / 2. Along a half circle the distance
// from x increases monotonically from 0 to 2, so the root is bracketed by
// [theta, theta + pi]; the bracket is narrowed by regula falsi with the
// Illinois modification.
double midpoint_depth(double theta, double s, double p) noexcept {
  const Point2 x = unit_point(theta, p);
  auto gap = [&](double phi) {
    const Point2 y = unit_point(phi, p);
    return norm2(x.a - y.a, x.b - y.b, p) - s;
  };
  double lo = theta;
  double hi = theta + std::numbers::pi;
  double flo = -s;
  double fhi = gap(hi);
  double phi = hi;
  if (fhi > 0.0) {
    int side = 0;
    for (int it = 0; it < 200; ++it) {
      phi = (lo * fhi - hi * flo) / (fhi - flo);
      if (!(phi > lo && phi < hi)) phi = 0.5 * (lo + hi);
      const double f = gap(phi);
      if (f == 0.0 || hi - lo <= 1e-15) break;
      if (f < 0.0) {
        lo = phi;
        flo = f;
        if (side == -1) fhi *= 0.5;
        side = -1;
      } else {
        hi = phi;
        fhi = f;
        if (side == 1) flo *= 0.5;
        side = 1;
      }
    }
  }
  const Point2 y = unit_point(phi, p);
  return 1.0 - 0.5 * norm2(x.a + y.a, x.b + y.b, p);
}

// Infimum of the midpoint depth over the section. The depth is periodic in
// theta with period pi/2 (rotation by a right angle is an isometry of l^p_2),
// so a coarse scan of one period followed by golden-section refinement of the
// best cell suffices.
double section_modulus(double s, double p) {
  constexpr int kScan = 32;
  constexpr double kThetaTol = 1e-6;
  const double period = 0.5 * std::numbers::pi;
  const double h = period / kScan;

  int best = 0;
  double best_val = midpoint_depth(0.0, s, p);
  for (int k = 1; k < kScan; ++k) {
    const double v = midpoint_depth(k * h, s, p);
    if (v < best_val) {
      best_val = v;
      best = k;
    }
  }

  const detail::LineMinimum refined = detail::golden_section_minimize(
      [&](double theta) { return midpoint_depth(theta, s, p); }, (best - 1) * h, (best + 1) * h,
      kThetaTol);
  return std::clamp(std::min(best_val, refined.value), 0.0, 1.0);
}

}  // namespace

double modulus_of_convexity(double s, const SpaceSpec& space) {
  require_uniformly_convex(space, "modulus of convexity");
  if (!(s >= 0.0 && s <= 2.0)) throw Error(Errc::invalid_argument, "tau(s) needs s in [0, 2]");
  if (s == 0.0) return 0.0;
  if (s == 2.0) return 1.0;
  const double p = space.p();
  if (p >= 2.0) {
    // 1 - (1 - a)^(1/p) written to avoid cancellation for small s.
    const double a = std::pow(0.5 * s, p);
    return -std::expm1(std::log1p(-a) / p);
  }
  return section_modulus(s, p);
}

double gamma(double t, const SpaceSpec& space) {
  require_uniformly_convex(space, "gamma");
  if (!(t >= 0.0 && t <= 1.0)) throw Error(Errc::invalid_argument, "gamma(t) needs t in [0, 1]");
  // tau(s) > 0 for every s > 0; the numerical section modulus cannot resolve
  // depths below rounding level, so the endpoint is answered exactly.
  if (t == 0.0) return 0.0;
  if (modulus_of_convexity(2.0, space) <= t) return 2.0;
  double lo = 0.0;
  double hi = 2.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (modulus_of_convexity(mid, space) <= t) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace neariso
