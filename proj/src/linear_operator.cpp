#include "neariso/linear_operator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "neariso/error.hpp"

namespace neariso {

const char* to_string(OperatorRole role) noexcept {
  switch (role) {
    case OperatorRole::isometry: return "isometry";
    case OperatorRole::projection: return "projection";
    case OperatorRole::left_inverse: return "left-inverse";
    case OperatorRole::functional: return "functional";
    case OperatorRole::generic: return "generic";
  }
  return "unknown";
}

LinearOperator::LinearOperator(Matrix m, SpaceSpec from, SpaceSpec to, OperatorRole r)
    : matrix(std::move(m)), domain(from), codomain(to), role(r) {
  if (static_cast<std::size_t>(matrix.rows()) != codomain.dim() ||
      static_cast<std::size_t>(matrix.cols()) != domain.dim()) {
    std::ostringstream os;
    os << "operator matrix is " << matrix.rows() << "x" << matrix.cols() << ", expected "
       << codomain.dim() << "x" << domain.dim();
    throw Error(Errc::dimension_mismatch, os.str());
  }
  if (!matrix.allFinite()) throw Error(Errc::invalid_argument, "operator matrix has non-finite entries");
}

Vector LinearOperator::operator()(const Vector& x) const {
  detail::require_dim(x, domain, "operator argument");
  return matrix * x;
}

double operator_norm_estimate(const LinearOperator& a, const std::vector<Vector>& probes) {
  double best = 0.0;
  for (const Vector& x : probes) {
    const double nx = norm(x, a.domain);
    if (nx == 0.0) continue;
    best = std::max(best, norm(a(x), a.codomain) / nx);
  }
  return best;
}

double isometry_defect(const LinearOperator& a, const std::vector<Vector>& probes) {
  double worst = 0.0;
  for (const Vector& x : probes) {
    worst = std::max(worst, std::abs(norm(a(x), a.codomain) - norm(x, a.domain)));
  }
  return worst;
}

LinearOperator leading_axes_embedding(const SpaceSpec& domain, const SpaceSpec& codomain,
                                      double sign) {
  if (codomain.dim() < domain.dim()) {
    throw Error(Errc::dimension_mismatch, "embedding target is smaller than the source");
  }
  Matrix m = Matrix::Zero(codomain.dim(), domain.dim());
  for (std::size_t i = 0; i < domain.dim(); ++i) m(i, i) = sign;
  return LinearOperator(std::move(m), domain, codomain, OperatorRole::isometry);
}

Matrix left_pseudo_inverse(const Matrix& m) {
  const Matrix gram = m.transpose() * m;
  Eigen::LDLT<Matrix> ldlt(gram);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      ldlt.vectorD().minCoeff() <= 1e-14 * std::max(1.0, ldlt.vectorD().maxCoeff())) {
    throw Error(Errc::invalid_argument, "matrix does not have full column rank");
  }
  return ldlt.solve(m.transpose());
}

}  // namespace neariso
