#pragma once

#include <functional>
#include <vector>

#include "neariso/maps.hpp"
#include "neariso/space.hpp"

// Reference computations used to check the library. None of them calls into
// the routines they are meant to check; they only rely on norm().
namespace neariso::oracle {

/// Gradient of the norm at z by Richardson-extrapolated central differences.
Vector norm_gradient_fd(const Vector& z, const SpaceSpec& space);

/// inf 1 - ||x + y|| / 2 over unit x, y of l^p_2 with ||x - y|| >= s, by a
/// full (theta, phi) grid over pairs of angles followed by zooming grids around
/// the best feasible pair.
double modulus_brute_force(double s, double p);

/// Modulus of convexity of l^p for 1 < p <= 2 from the implicit equation
///   (1 - d + s/2)^p + |1 - d - s/2|^p = 2.
double modulus_implicit(double s, double p);

/// Minimum of a continuous function on [a, b] by repeated dense scans that
/// zoom onto the best sample.
double scan_minimum(const std::function<double(double)>& f, double a, double b);

/// max over all pairs of | ||f(x_i) - f(x_j)|| - ||x_i - x_j|| |.
double exhaustive_epsilon(const MapInstance& f, const std::vector<Vector>& points);

}  // namespace neariso::oracle
