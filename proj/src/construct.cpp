#include "neariso/construct.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "neariso/error.hpp"
#include "neariso/sampler.hpp"

namespace neariso {

namespace {

constexpr double kMaxScale = 1152921504606846976.0;  // 2^60
constexpr std::uint64_t kCheckSeed = 0x51ab1e5eedULL;

void require_uniformly_convex_codomain(const MapInstance& f) {
  if (!f.codomain.uniformly_convex()) {
    throw Error(Errc::not_uniformly_convex,
                "directional limits need a uniformly convex codomain, got " + f.codomain.label());
  }
}

}  // namespace

double limit_rate_bound(double s, double eps, const SpaceSpec& codomain) {
  if (!(s > 2.0 * eps)) throw Error(Errc::invalid_argument, "rate bound needs s > 2 eps");
  return (1.0 + eps / s) * gamma(3.0 * eps / (s + eps), codomain);
}

DirectionalLimit directional_limit(const MapInstance& f, const Vector& x, double tol) {
  require_uniformly_convex_codomain(f);
  if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "tolerance must be positive");
  const double eps = f.claimed_eps;
  const double nx = norm(x, f.domain);
  DirectionalLimit out{Vector::Zero(f.codomain.dim()), {0.0, 0.0, tol, eps}};
  if (nx == 0.0) return out;

  double s = std::max(2.0 * eps + 1.0, 1.0);
  double rate = limit_rate_bound(s, eps, f.codomain);
  while (rate > tol) {
    s *= 2.0;
    if (s > kMaxScale) {
      std::ostringstream os;
      os << "rate bound stays above " << tol << " up to s = 2^60 (eps = " << eps << ", "
         << f.codomain.label() << ")";
      throw Error(Errc::no_convergence, os.str());
    }
    rate = limit_rate_bound(s, eps, f.codomain);
  }
  const Vector unit = x / nx;
  out.value = f(s * unit) * (nx / s);
  out.certificate.s_used = s;
  out.certificate.rate_bound = rate;
  return out;
}

IsometryFit build_linear_isometry(const MapInstance& f, double tol) {
  const std::size_t n = f.domain.dim();
  Matrix cols(f.codomain.dim(), n);
  std::vector<LimitCertificate> certs;
  for (std::size_t i = 0; i < n; ++i) {
    const DirectionalLimit lim = directional_limit(f, Vector::Unit(n, i), tol);
    cols.col(static_cast<Eigen::Index>(i)) = lim.value;
    certs.push_back(lim.certificate);
  }
  IsometryFit fit{LinearOperator(std::move(cols), f.domain, f.codomain, OperatorRole::isometry),
                  std::move(certs), 0.0, 0.0};

  fit.isometry_defect = isometry_defect(fit.op, unit_sphere_sample(f.domain, 128, kCheckSeed));
  if (fit.isometry_defect > 2.0 * tol) {
    std::ostringstream os;
    os << "fitted operator is not isometric within 2*tol (defect " << fit.isometry_defect << ")";
    throw Error(Errc::check_failed, os.str());
  }
  if (n >= 2) {
    Vector diag = Vector::Zero(n);
    diag[0] = 1.0;
    diag[1] = 1.0;
    const DirectionalLimit sum = directional_limit(f, diag, tol);
    fit.linearity_defect =
        norm(sum.value - fit.op.matrix.col(0) - fit.op.matrix.col(1), f.codomain);
    if (fit.linearity_defect > 3.0 * tol) {
      std::ostringstream os;
      os << "directional limits are not additive within 3*tol (defect " << fit.linearity_defect
         << ")";
      throw Error(Errc::check_failed, os.str());
    }
  }
  return fit;
}

RayFunctional ray_functional(const MapInstance& f, double n) {
  return ray_functional(f, n, Vector::Unit(f.domain.dim(), 0));
}

RayFunctional ray_functional(const MapInstance& f, double n, const Vector& direction) {
  if (!f.codomain.smooth()) {
    throw Error(Errc::not_smooth, "ray functional needs a smooth codomain, got " + f.codomain.label());
  }
  if (!(n > f.claimed_eps)) throw Error(Errc::invalid_argument, "ray functional needs n > eps");
  const double nd = norm(direction, f.domain);
  if (nd == 0.0) throw Error(Errc::invalid_argument, "ray direction is zero");
  const Vector u = direction / nd;
  const Vector endpoint = f(n * u);
  if (norm(endpoint, f.codomain) == 0.0) throw Error(Errc::invalid_argument, "f(n u) = 0");
  return RayFunctional{support_functional(endpoint, f.codomain), u, n, 2.0 * f.claimed_eps / n};
}

namespace {

// g with g(v) = 1 and ||g||_q = 1 / ||v||_p.
Vector norming_functional(const Vector& v, const SpaceSpec& space) {
  const double nv = norm(v, space);
  if (space.smooth()) return support_functional(v, space).coords / nv;
  Vector g = Vector::Zero(v.size());
  if (space.p() == 1.0) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      g[i] = v[i] > 0.0 ? 1.0 : (v[i] < 0.0 ? -1.0 : 0.0);
    }
  } else {
    Eigen::Index at = 0;
    v.cwiseAbs().maxCoeff(&at);
    g[at] = v[at] > 0.0 ? 1.0 : -1.0;
  }
  return g / nv;
}

void check_projection(const LinearOperator& proj, const Subspace& k) {
  const double idem = (proj.matrix * proj.matrix - proj.matrix).cwiseAbs().maxCoeff();
  if (idem > 1e-12) {
    throw Error(Errc::check_failed, "projection is not idempotent");
  }
  std::vector<Vector> probes = unit_sphere_sample(proj.domain, 256, kCheckSeed);
  for (Eigen::Index c = 0; c < k.basis().cols(); ++c) probes.push_back(k.basis().col(c));
  if (operator_norm_estimate(proj, probes) > 1.0 + 1e-9) {
    throw Error(Errc::check_failed, "projection has sampled norm above 1");
  }
}

}  // namespace

LinearOperator norm_one_projection(const SpaceSpec& space, const Subspace& k) {
  if (!(k.ambient() == space)) {
    throw Error(Errc::dimension_mismatch, "subspace does not lie in the given space");
  }
  const Matrix& basis = k.basis();
  const auto m = static_cast<Eigen::Index>(space.dim());
  Matrix pm;
  if (space.hilbert()) {
    Eigen::HouseholderQR<Matrix> qr(basis);
    const Matrix q = qr.householderQ() * Matrix::Identity(m, basis.cols());
    pm = q * q.transpose();
  } else {
    Matrix cleaned = basis;
    std::vector<int> owner(static_cast<std::size_t>(m), -1);
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
      const double cutoff = 1e-12 * basis.col(c).cwiseAbs().maxCoeff();
      for (Eigen::Index r = 0; r < m; ++r) {
        if (std::abs(basis(r, c)) <= cutoff) {
          cleaned(r, c) = 0.0;
          continue;
        }
        auto& slot = owner[static_cast<std::size_t>(r)];
        if (slot != -1) {
          throw Error(Errc::unsupported,
                      "no norm-one projection construction available in " + space.label() +
                          " for a subspace without disjointly supported basis");
        }
        slot = static_cast<int>(c);
      }
    }
    pm = Matrix::Zero(m, m);
    for (Eigen::Index c = 0; c < cleaned.cols(); ++c) {
      const Vector v = cleaned.col(c);
      pm += v * norming_functional(v, space).transpose();
    }
  }
  LinearOperator proj(std::move(pm), space, space, OperatorRole::projection);
  check_projection(proj, k);
  return proj;
}

LeftInverse build_left_inverse_T(const MapInstance& f, double tol) {
  IsometryFit fit = build_linear_isometry(f, tol);
  LeftInverse out = build_left_inverse_T(f, fit.op);
  out.certificates = std::move(fit.certificates);
  return out;
}

LeftInverse build_left_inverse_T(const MapInstance& f, const LinearOperator& phi) {
  if (!(phi.domain == f.domain) || !(phi.codomain == f.codomain)) {
    throw Error(Errc::dimension_mismatch, "isometry does not act between the map's spaces");
  }
  const Subspace image(f.codomain, phi.matrix);
  LinearOperator proj = norm_one_projection(f.codomain, image);
  Matrix tm = left_pseudo_inverse(phi.matrix) * proj.matrix;
  LinearOperator t(std::move(tm), f.codomain, f.domain, OperatorRole::left_inverse);

  const auto n = static_cast<Eigen::Index>(f.domain.dim());
  const double inverse_defect =
      (t.matrix * phi.matrix - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (inverse_defect > 1e-9) {
    std::ostringstream os;
    os << "T phi differs from the identity by " << inverse_defect;
    throw Error(Errc::check_failed, os.str());
  }
  std::vector<Vector> probes = unit_sphere_sample(f.codomain, 512, kCheckSeed);
  for (Eigen::Index c = 0; c < n; ++c) probes.push_back(phi.matrix.col(c));
  const double norm_est = operator_norm_estimate(t, probes);
  if (std::abs(norm_est - 1.0) > 1e-6) {
    std::ostringstream os;
    os << "sampled norm of T is " << norm_est << ", expected 1";
    throw Error(Errc::check_failed, os.str());
  }
  LeftInverse out{std::move(t), std::move(proj), phi, {}, norm_est, inverse_defect};
  return out;
}

}  // namespace neariso
