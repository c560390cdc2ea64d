#include "neariso/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace neariso::oracle {

Vector norm_gradient_fd(const Vector& z, const SpaceSpec& space) {
  const double scale = norm(z, space);
  Vector grad(z.size());
  auto central = [&](Eigen::Index i, double h) {
    Vector a = z;
    Vector b = z;
    a[i] += h;
    b[i] -= h;
    return (norm(a, space) - norm(b, space)) / (2.0 * h);
  };
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double h = 1e-4 * std::max(std::abs(z[i]), 1e-2 * scale);
    grad[i] = (4.0 * central(i, 0.5 * h) - central(i, h)) / 3.0;
  }
  return grad;
}

namespace {

struct Unit2 {
  double a;
  double b;
};

double norm2(double a, double b, double p) {
  Vector v(2);
  v << a, b;
  return norm(v, SpaceSpec(2, p));
}

Unit2 unit_at(double angle, double p) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double n = norm2(c, s, p);
  return {c / n, s / n};
}

}  // namespace

double modulus_brute_force(double s, double p) {
  constexpr int kCoarse = 360;
  constexpr int kZoom = 24;
  constexpr int kRounds = 14;
  const double two_pi = 2.0 * std::numbers::pi;

  std::vector<Unit2> circle;
  circle.reserve(kCoarse);
  for (int k = 0; k < kCoarse; ++k) circle.push_back(unit_at(two_pi * k / kCoarse, p));

  double best = std::numeric_limits<double>::infinity();
  double best_theta = 0.0;
  double best_phi = 0.0;
  auto consider = [&](double theta, double phi, const Unit2& x, const Unit2& y) {
    if (norm2(x.a - y.a, x.b - y.b, p) < s) return;
    const double depth = 1.0 - 0.5 * norm2(x.a + y.a, x.b + y.b, p);
    if (depth < best) {
      best = depth;
      best_theta = theta;
      best_phi = phi;
    }
  };
  for (int i = 0; i < kCoarse; ++i) {
    for (int j = 0; j < kCoarse; ++j) {
      consider(two_pi * i / kCoarse, two_pi * j / kCoarse, circle[i], circle[j]);
    }
  }

  double half = two_pi / kCoarse;
  for (int round = 0; round < kRounds; ++round) {
    const double ct = best_theta;
    const double cp = best_phi;
    for (int i = -kZoom; i <= kZoom; ++i) {
      const double theta = ct + half * i / kZoom;
      const Unit2 x = unit_at(theta, p);
      for (int j = -kZoom; j <= kZoom; ++j) {
        const double phi = cp + half * j / kZoom;
        consider(theta, phi, x, unit_at(phi, p));
      }
    }
    half *= 0.25;
  }
  return best;
}

double modulus_implicit(double s, double p) {
  // g(a) = (a + s/2)^p + |a - s/2|^p increases in a >= 0; solve g(1 - d) = 2.
  auto g = [&](double a) { return std::pow(a + 0.5 * s, p) + std::pow(std::abs(a - 0.5 * s), p); };
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < 2.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 1.0 - 0.5 * (lo + hi);
}

double scan_minimum(const std::function<double(double)>& f, double a, double b) {
  constexpr int kPoints = 200;
  double best = std::numeric_limits<double>::infinity();
  double at = a;
  for (int round = 0; round < 12; ++round) {
    for (int k = 0; k <= kPoints; ++k) {
      const double x = a + (b - a) * k / kPoints;
      const double v = f(x);
      if (v < best) {
        best = v;
        at = x;
      }
    }
    const double width = (b - a) / kPoints;
    a = at - 2.0 * width;
    b = at + 2.0 * width;
  }
  return best;
}

double exhaustive_epsilon(const MapInstance& f, const std::vector<Vector>& points) {
  double worst = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i == j) continue;
      const double dx = norm(points[i] - points[j], f.domain);
      const double dy = norm(f.eval(points[i]) - f.eval(points[j]), f.codomain);
      worst = std::max(worst, std::abs(dy - dx));
    }
  }
  return worst;
}

}  // namespace neariso::oracle
