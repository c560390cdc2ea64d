#include <doctest.h>

#include <cmath>
#include <random>

#include "neariso/construct.hpp"
#include "neariso/error.hpp"

using namespace neariso;

namespace {

Vector scalar(double t) { return Vector::Constant(1, t); }

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

MapInstance perturbed(double p, std::size_t n, std::size_t m, double eps, std::uint64_t seed) {
  const SpaceSpec in(n, p);
  const SpaceSpec out(m, p);
  return make_perturbed_isometry(in, out, random_coordinate_isometry(in, out, seed), eps, seed + 1);
}

}  // namespace

TEST_CASE("directional limit of an exact isometry is exact") {
  const MapInstance f = make_linear_map(random_coordinate_isometry(SpaceSpec(2, 3.0), SpaceSpec(3, 3.0), 4));
  const Vector x = vec({0.3, -1.7});
  const DirectionalLimit lim = directional_limit(f, x, 1e-6);
  CHECK((lim.value - (*f.reference)(x)).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("directional limit of the square-root map") {
  const MapInstance f = make_hyers_ulam(0.5);
  const DirectionalLimit lim = directional_limit(f, scalar(1.0), 1e-3);
  CHECK((lim.value - vec({1.0, 0.0})).norm() <= 1e-3);
  CHECK(lim.certificate.rate_bound <= 1e-3);
  CHECK(lim.certificate.s_used > 2.0 * 0.5);
  CHECK(lim.certificate.tolerance_requested == 1e-3);
  CHECK(lim.certificate.rate_bound ==
        limit_rate_bound(lim.certificate.s_used, lim.certificate.eps, f.codomain));
  CHECK_THROWS_AS(directional_limit(f, scalar(1.0), 0.0), Error);
  CHECK_THROWS_AS(limit_rate_bound(0.5, 0.5, f.codomain), Error);
}

TEST_CASE("directional limit needs a uniformly convex codomain") {
  const MapInstance f = make_sharp_l1(0.5, 0.25);
  try {
    directional_limit(f, scalar(1.0), 1e-3);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_uniformly_convex);
  }
}

TEST_CASE("property: directional limit is homogeneous and certified") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double tol = 1e-3;
  for (double p : {2.0, 3.0}) {
    const MapInstance f = perturbed(p, 2, 3, 0.5, 10 + static_cast<std::uint64_t>(p));
    for (int k = 0; k < 5; ++k) {
      const Vector x = vec({gauss(rng), gauss(rng)});
      const DirectionalLimit a = directional_limit(f, x, tol);
      const DirectionalLimit b = directional_limit(f, 2.0 * x, tol);
      CHECK(norm(b.value - 2.0 * a.value, f.codomain) <= 3.0 * tol * norm(2.0 * x, f.domain));
      CHECK(a.certificate.rate_bound ==
            limit_rate_bound(a.certificate.s_used, a.certificate.eps, f.codomain));
      CHECK(norm(a.value - (*f.reference)(x), f.codomain) <= tol * norm(x, f.domain));
    }
  }
}

TEST_CASE("fitted isometry recovers the planted one") {
  const double tol = 1e-4;
  for (double p : {2.0, 3.0, 4.0}) {
    const MapInstance f = perturbed(p, 3, 4, 0.3, 21);
    const IsometryFit fit = build_linear_isometry(f, tol);
    CHECK((fit.op.matrix - f.reference->matrix).cwiseAbs().maxCoeff() <= 2.0 * tol);
    CHECK(fit.op.role == OperatorRole::isometry);
    CHECK(fit.certificates.size() == 3);
    CHECK(fit.isometry_defect <= 2.0 * tol);
    CHECK(fit.linearity_defect <= 3.0 * tol);
  }
}

TEST_CASE("fitted isometry examples") {
  const SpaceSpec s(3, 2.0);
  const MapInstance id =
      make_linear_map(LinearOperator(Matrix::Identity(3, 3), s, s, OperatorRole::isometry));
  CHECK((build_linear_isometry(id, 1e-6).op.matrix - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() ==
        0.0);
  const IsometryFit ramp = build_linear_isometry(make_ramp_hilbert(0.5, 0.25), 1e-3);
  CHECK(ramp.op.matrix.rows() == 2);
  CHECK(ramp.op.matrix.cols() == 1);
  CHECK(std::abs(ramp.op.matrix(0, 0) - 1.0) <= 1e-3);
  CHECK(std::abs(ramp.op.matrix(1, 0)) <= 1e-3);
}

TEST_CASE("property: constructed isometries preserve sampled norms") {
  const double tol = 1e-4;
  const MapInstance f = perturbed(3.0, 4, 4, 0.5, 31);
  const IsometryFit fit = build_linear_isometry(f, tol);
  for (const Vector& x : unit_sphere_sample(f.domain, 500, 77)) {
    CHECK(std::abs(norm(fit.op(x), f.codomain) - 1.0) <= 2.0 * tol);
  }
}

TEST_CASE("ray functional examples") {
  const MapInstance exact =
      make_linear_map(leading_axes_embedding(SpaceSpec(1, 2.0), SpaceSpec(2, 3.0)));
  const RayFunctional e = ray_functional(exact, 5.0);
  CHECK(e.functional.coords == vec({1.0, 0.0}));
  for (double t : {0.0, 1.0, 4.5}) CHECK(e.functional(exact(scalar(t))) == t);

  const MapInstance f = make_hyers_ulam(0.5);
  const RayFunctional h = ray_functional(f, 1e6);
  CHECK((h.functional.coords - vec({1.0, 0.0})).norm() <= 1e-3);
  CHECK(dual_norm(h.functional, f.codomain) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(h.slack == doctest::Approx(2.0 * 0.5 / 1e6));
  CHECK_THROWS_AS(ray_functional(f, 0.0), Error);
}

TEST_CASE("property: ray sandwich on [0, n]") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double n = 1e4;
  for (const MapInstance& f : {make_hyers_ulam(0.5), make_ramp_hilbert(0.5, 0.25),
                               make_ramp_hilbert(0.2, 0.3)}) {
    const RayFunctional ray = ray_functional(f, n);
    for (int k = 0; k < 200; ++k) {
      const double t = n * unit(rng);
      const double v = ray.functional(f(scalar(t)));
      CHECK(v >= t - 2.0 * f.claimed_eps - 1e-9);
      CHECK(v <= t + f.claimed_eps + 1e-9);
    }
  }
}

TEST_CASE("norm-one projection examples") {
  const SpaceSpec e2(2, 2.0);
  Matrix diag(2, 1);
  diag << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const LinearOperator p = norm_one_projection(e2, Subspace(e2, diag));
  CHECK((p.matrix - Matrix::Constant(2, 2, 0.5)).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(p.role == OperatorRole::projection);

  const SpaceSpec l3(4, 3.0);
  const LinearOperator q = norm_one_projection(l3, Subspace::leading_axes(l3, 2));
  Matrix trunc = Matrix::Zero(4, 4);
  trunc(0, 0) = 1.0;
  trunc(1, 1) = 1.0;
  CHECK(q.matrix == trunc);

  const SpaceSpec l33(3, 3.0);
  Matrix skew(3, 1);
  skew << 1.0, 1.0, 0.0;
  const LinearOperator r = norm_one_projection(l33, Subspace(l33, skew));
  CHECK((r.matrix * r.matrix - r.matrix).cwiseAbs().maxCoeff() <= 1e-12);

  Matrix overlap(3, 2);
  overlap << 1.0, 0.0, 1.0, 1.0, 0.0, 1.0;
  try {
    norm_one_projection(l33, Subspace(l33, overlap));
    FAIL("expected unsupported");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unsupported);
  }
}

TEST_CASE("left inverse of an exact isometry into a larger Hilbert space") {
  const SpaceSpec in(2, 2.0);
  const SpaceSpec out(4, 2.0);
  Matrix q = Matrix::Zero(4, 2);
  q(0, 0) = 0.6;
  q(1, 0) = 0.8;
  q(2, 1) = -1.0;
  const MapInstance f = make_linear_map(LinearOperator(q, in, out, OperatorRole::isometry));
  const LeftInverse li = build_left_inverse_T(f, 1e-6);
  CHECK((li.t.matrix - q.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  for (const Vector& x : {vec({1.0, 2.0}), vec({-3.5, 0.25})}) {
    CHECK((li.t(f(x)) - x).cwiseAbs().maxCoeff() <= 1e-12);
  }
  CHECK(std::abs(li.norm_estimate - 1.0) <= 1e-12);
}

TEST_CASE("left inverse of the square-root map is exact on the first coordinate") {
  const MapInstance f = make_hyers_ulam(0.5);
  const LeftInverse li = build_left_inverse_T(f, 1e-3);
  CHECK(li.t.role == OperatorRole::left_inverse);
  for (double x : {-100.0, -1.0, 0.0, 2.0, 1e4}) {
    CHECK(std::abs(li.t(f(scalar(x)))[0] - x) <= 1e-3 * std::abs(x) + 1e-12);
  }
  const LeftInverse exact = build_left_inverse_T(f, *f.reference);
  CHECK(exact.t.matrix == (Matrix(1, 2) << 1.0, 0.0).finished());
  for (double x : {-100.0, 2.0, 1e4}) CHECK(exact.t(f(scalar(x)))[0] == x);
}

TEST_CASE("property: T phi is the identity and T f stays within 2 eps") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss(0.0, 20.0);
  for (double p : {2.0, 3.0}) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const double eps = 0.5;
      const MapInstance f = perturbed(p, 2 + seed % 2, 4, eps, seed * 17);
      const LeftInverse li = build_left_inverse_T(f, 1e-5);
      CHECK(li.inverse_defect <= 1e-9);
      CHECK(std::abs(li.norm_estimate - 1.0) <= 1e-6);
      for (int k = 0; k < 200; ++k) {
        Vector x(static_cast<Eigen::Index>(f.domain.dim()));
        for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = gauss(rng);
        CHECK((li.t(li.isometry(x)) - x).cwiseAbs().maxCoeff() <= 1e-9 * (1.0 + x.norm()));
        CHECK(distance(li.t(f(x)), x, f.domain) <= 2.0 * eps);
      }
    }
  }
}

TEST_CASE("left inverse rejects mismatched operators") {
  const MapInstance f = make_hyers_ulam(0.5);
  const LinearOperator wrong = leading_axes_embedding(SpaceSpec(1, 2.0), SpaceSpec(3, 2.0));
  CHECK_THROWS_AS(build_left_inverse_T(f, wrong), Error);
}
