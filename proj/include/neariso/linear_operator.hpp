#pragma once

#include <string_view>
#include <vector>

#include "neariso/space.hpp"

namespace neariso {

enum class OperatorRole { isometry, projection, left_inverse, functional, generic };

const char* to_string(OperatorRole role) noexcept;

/// A matrix acting from `domain` to `codomain` (codomain.dim x domain.dim).
struct LinearOperator {
  Matrix matrix;
  SpaceSpec domain;
  SpaceSpec codomain;
  OperatorRole role = OperatorRole::generic;

  LinearOperator(Matrix m, SpaceSpec from, SpaceSpec to, OperatorRole r);

  Vector operator()(const Vector& x) const;
};

/// max ||Ax|| / ||x|| over the nonzero probes; a lower bound for ||A||.
double operator_norm_estimate(const LinearOperator& a, const std::vector<Vector>& probes);

/// max | ||Ax|| - ||x|| | over the probes.
double isometry_defect(const LinearOperator& a, const std::vector<Vector>& probes);

/// x -> sign * (x, 0, ..., 0): the embedding of `domain` onto the leading
/// coordinates of `codomain`. An isometry whenever both spaces share p (or the
/// domain is the line).
LinearOperator leading_axes_embedding(const SpaceSpec& domain, const SpaceSpec& codomain,
                                      double sign = 1.0);

/// Moore-Penrose inverse of a matrix with full column rank.
Matrix left_pseudo_inverse(const Matrix& m);

}  // namespace neariso
