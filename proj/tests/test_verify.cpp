#include <doctest.h>

#include <cmath>
#include <random>

#include "neariso/construct.hpp"
#include "neariso/error.hpp"
#include "neariso/verify.hpp"

using namespace neariso;

namespace {

Vector scalar(double t) { return Vector::Constant(1, t); }

const Sampler kLineGrid{.kind = SamplerKind::grid, .radius = 5.0, .step = 1e-3};

}  // namespace

TEST_CASE("bound kind names round trip") {
  for (BoundKind kind : all_bound_kinds()) CHECK(parse_bound_kind(to_string(kind)) == kind);
  CHECK(all_bound_kinds().size() == 5);
  CHECK_THROWS_AS(parse_bound_kind("3eps"), Error);
}

TEST_CASE("bound values") {
  const MapInstance f = make_ramp_hilbert(0.5, 0.25);
  CHECK(bound_value(BoundKind::figiel_2eps, f) == 1.0);
  CHECK(bound_value(BoundKind::nearsurj_2eps, f) == 1.0);
  CHECK(bound_value(BoundKind::delta_onto_2e2d, f) == 1.5);
  CHECK(bound_value(BoundKind::hilbert_2e_d, f) == 1.25);
  CHECK(bound_value(BoundKind::hilbert_pythag, f) == std::sqrt(1.0625));
  CHECK_FALSE(bound_applicable(BoundKind::delta_onto_2e2d, make_hyers_ulam(0.5)));
  CHECK_FALSE(bound_applicable(BoundKind::hilbert_2e_d, make_sharp_l1(0.5, 0.25)));
  CHECK(bound_applicable(BoundKind::delta_onto_2e2d, make_sharp_l1(0.5, 0.25)));
  CHECK(bound_checkable(BoundKind::figiel_2eps, make_sharp_l1(0.5, 0.25)));
  CHECK_FALSE(bound_applicable(BoundKind::figiel_2eps, make_sharp_l1(0.5, 0.25)));
  CHECK_FALSE(bound_applicable(BoundKind::nearsurj_2eps, make_sharp_l1(0.5, 0.25)));
  CHECK_FALSE(bound_applicable(BoundKind::nearsurj_2eps, make_hyers_ulam(0.5)));
  CHECK(bound_checkable(BoundKind::nearsurj_2eps, make_hyers_ulam(0.5)));
  CHECK(bound_applicable(BoundKind::nearsurj_2eps,
                         make_catalog_map("perturbed", {.eps = 0.1, .delta = {}, .p = 3.0, .dim = 2})));
  CHECK_FALSE(bound_applicable(BoundKind::nearsurj_2eps, f));
}

TEST_CASE("sharp-l1 attains 2 eps + 2 delta") {
  const MapInstance f = make_sharp_l1(0.5, 0.25);
  Sampler grid{.kind = SamplerKind::grid, .radius = 3.0, .step = 1e-3, .extra_points = {scalar(0.75)}};
  const BoundReport r = check_bound(f, *f.reference, BoundKind::delta_onto_2e2d, grid);
  CHECK(std::abs(r.measured - 1.5) <= 1e-12);
  CHECK(r.bound == 1.5);
  CHECK(std::abs(r.margin) <= 1e-12);
  CHECK(r.passed);
  CHECK(r.argmax[0] == 0.75);
  CHECK(r.samples == 6002);
  CHECK(r.label == "sharp-l1");
}

TEST_CASE("ramp deviation stays within the Hilbert bounds") {
  const MapInstance f = make_ramp_hilbert(0.5, 0.25);
  const BoundReport a = check_bound(f, *f.reference, BoundKind::hilbert_2e_d, kLineGrid);
  CHECK(a.measured == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(a.bound == 1.25);
  CHECK(a.passed);
  const BoundReport b = check_bound(f, *f.reference, BoundKind::hilbert_pythag, kLineGrid);
  CHECK(b.passed);
  CHECK(b.margin > 0.0);
}

TEST_CASE("check_bound validates its operator") {
  const MapInstance f = make_ramp_hilbert(0.5, 0.25);
  const LinearOperator t = build_left_inverse_T(f, *f.reference).t;
  CHECK_THROWS_AS(check_bound(f, t, BoundKind::nearsurj_2eps, kLineGrid), Error);
  CHECK_THROWS_AS(check_bound(f, *f.reference, BoundKind::figiel_2eps, kLineGrid), Error);
  const MapInstance g = make_sharp_l1(0.5, 0.25);
  CHECK_THROWS_AS(check_bound(g, *g.reference, BoundKind::hilbert_2e_d, kLineGrid), Error);
  CHECK_THROWS_AS(check_bound(make_hyers_ulam(0.5), *g.reference, BoundKind::nearsurj_2eps, kLineGrid),
                  Error);
}

TEST_CASE("exact isometry: every kind measures zero") {
  const SpaceSpec s(3, 2.0);
  const MapInstance f = make_linear_map(random_coordinate_isometry(s, SpaceSpec(4, 2.0), 2));
  const Sampler sampler{.radius = 3.0, .count = 1000};
  for (BoundKind kind : all_bound_kinds()) {
    const LinearOperator a =
        kind == BoundKind::figiel_2eps ? build_left_inverse_T(f, *f.reference).t : *f.reference;
    const BoundReport r = check_bound(f, a, kind, sampler);
    CHECK(r.measured == 0.0);
    CHECK(r.bound == 0.0);
    CHECK(r.passed);
  }
}

TEST_CASE("property: catalog instances never violate their bounds") {
  std::vector<MapInstance> maps = {make_sharp_l1(0.5, 0.25), make_sharp_l1(0.1, 0.4),
                                   make_ramp_hilbert(0.5, 0.25), make_ramp_hilbert(0.3, 0.1)};
  for (double p : {2.0, 3.0}) {
    const SpaceSpec in(2, p);
    const SpaceSpec out(3, p);
    maps.push_back(make_perturbed_isometry(in, out, random_coordinate_isometry(in, out, 8), 0.4, 9));
  }
  for (const MapInstance& f : maps) {
    const Sampler sampler{.radius = 6.0, .step = f.domain.dim() == 1 ? 1e-3 : 0.0, .count = 3000};
    if (bound_applicable(BoundKind::delta_onto_2e2d, f)) {
      CHECK(check_bound(f, *f.reference, BoundKind::delta_onto_2e2d, sampler).passed);
    }
    if (f.codomain.hilbert()) {
      const BoundReport a = check_bound(f, *f.reference, BoundKind::hilbert_2e_d, sampler);
      const BoundReport b = check_bound(f, *f.reference, BoundKind::hilbert_pythag, sampler);
      CHECK(a.passed);
      CHECK(b.passed);
      CHECK(b.bound <= a.bound);
    }
  }
}

TEST_CASE("property: nearsurjective bound with the fitted isometry") {
  for (double p : {2.0, 3.0, 4.0}) {
    for (std::uint64_t seed : {11u, 12u}) {
      const SpaceSpec s(3, p);
      const MapInstance f =
          make_perturbed_isometry(s, s, random_coordinate_isometry(s, s, seed), 0.3, seed + 100);
      // The p = 4 rate bound decays like s^(-1/4); 1e-5 would need s beyond 2^60.
      const IsometryFit fit = build_linear_isometry(f, p == 4.0 ? 1e-3 : 1e-5);
      const BoundReport r =
          check_bound(f, fit.op, BoundKind::nearsurj_2eps, Sampler{.radius = 20.0, .count = 2000});
      CHECK(r.passed);
      CHECK(r.measured <= 2.0 * 0.3);
    }
  }
}

TEST_CASE("property: composition with a domain isometry leaves the check unchanged") {
  const SpaceSpec in(2, 3.0);
  const SpaceSpec out(3, 3.0);
  const MapInstance f =
      make_perturbed_isometry(in, out, random_coordinate_isometry(in, out, 40), 0.5, 41);
  Matrix v(2, 2);
  v << 0.0, -1.0, 1.0, 0.0;
  MapInstance g = f;
  const MapFn inner = f.eval;
  g.eval = [inner, v](const Vector& x) -> Vector { return inner(v.transpose() * x); };
  const LinearOperator ug(f.reference->matrix * v.transpose(), in, out, OperatorRole::isometry);
  const Sampler grid{.kind = SamplerKind::grid, .radius = 4.0, .step = 0.01};
  for (BoundKind kind : {BoundKind::nearsurj_2eps, BoundKind::delta_onto_2e2d}) {
    const BoundReport a = check_bound(f, *f.reference, kind, grid);
    const BoundReport b = check_bound(g, ug, kind, grid);
    CHECK(a.measured == doctest::Approx(b.measured).epsilon(1e-14));
  }
}

TEST_CASE("sharpness suite") {
  const std::vector<SharpnessCheck> checks = sharpness_suite(0.5, 0.25);
  REQUIRE(checks.size() == 5);
  for (const SharpnessCheck& c : checks) {
    CAPTURE(c.name);
    CHECK(c.passed);
  }
  CHECK(checks[0].name == "sharp-l1/attain");
  CHECK(std::abs(checks[0].measured - 1.5) <= 1e-12);
  CHECK(checks[0].at[0] == 0.75);
  const SharpnessCheck& hu = checks.back();
  CHECK(hu.name == "hyers-ulam/unbounded");
  REQUIRE(hu.series.size() == 4);
  CHECK(std::abs(hu.series[1].second - 10.0) <= 1e-12);
  for (std::size_t i = 1; i < hu.series.size(); ++i) {
    CHECK(hu.series[i].second > hu.series[i - 1].second);
  }
}

TEST_CASE("inner product inequality") {
  const MapInstance ramp = make_ramp_hilbert(0.5, 0.25);
  const InnerProductCheck a = inner_product_bound_check(
      ramp, *ramp.reference, Sampler{.kind = SamplerKind::grid, .radius = 5.0, .step = 1e-2});
  CHECK(a.passed);
  CHECK(a.worst_ratio <= 1.0);
  CHECK(a.pairs > 0);

  const SpaceSpec s(3, 2.0);
  const MapInstance exact = make_linear_map(random_coordinate_isometry(s, s, 6));
  const InnerProductCheck b =
      inner_product_bound_check(exact, *exact.reference, Sampler{.radius = 3.0, .count = 500});
  CHECK(b.worst_lhs <= 1e-12);

  const MapInstance pert =
      make_perturbed_isometry(s, s, random_coordinate_isometry(s, s, 7), 0.2, 8);
  const InnerProductCheck c =
      inner_product_bound_check(pert, *pert.reference, Sampler{.radius = 10.0, .count = 2000});
  CHECK(c.passed);
  CHECK(c.worst_ratio <= 1.0);

  const MapInstance l1 = make_sharp_l1(0.5, 0.25);
  CHECK_THROWS_AS(inner_product_bound_check(l1, *l1.reference, kLineGrid), Error);
}

TEST_CASE("Frechet decay examples") {
  const SpaceSpec e2(2, 2.0);
  const FrechetDecay a =
      frechet_limit_check((Vector(2) << 1.0, 0.0).finished(), (Vector(2) << 0.0, 1.0).finished(), e2);
  REQUIRE(a.t.size() == 21);
  for (std::size_t k = 0; k < a.t.size(); ++k) {
    const double t = a.t[k];
    CHECK(a.d[k] == doctest::Approx(1.0 / (std::sqrt(t * t + 1.0) + t)).epsilon(1e-9));
  }
  CHECK(a.d.back() == doctest::Approx(4.76837158203125e-7).epsilon(1e-6));
  CHECK(a.passed);

  const FrechetDecay zero = frechet_limit_check((Vector(2) << 1.0, 2.0).finished(), Vector::Zero(2), e2);
  for (double d : zero.d) CHECK(d == 0.0);
  CHECK(zero.passed);

  const SpaceSpec l3(4, 3.0);
  std::mt19937_64 rng(31);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector z(4);
  Vector w(4);
  for (Eigen::Index i = 0; i < 4; ++i) {
    z[i] = gauss(rng);
    w[i] = gauss(rng);
  }
  w = annihilate(w, z, l3);
  CHECK(std::abs(support_functional(z, l3)(w)) <= 1e-12);
  const FrechetDecay c = frechet_limit_check(z, w, l3);
  CHECK(c.passed);
  CHECK(c.d.back() <= 1e-4 * norm(w, l3));
}

TEST_CASE("Frechet check rejects non-annihilated directions") {
  const SpaceSpec e2(2, 2.0);
  CHECK_THROWS_AS(
      frechet_limit_check((Vector(2) << 1.0, 0.0).finished(), (Vector(2) << 1.0, 1.0).finished(), e2),
      Error);
}
