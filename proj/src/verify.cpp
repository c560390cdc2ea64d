#include "neariso/verify.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "neariso/error.hpp"

namespace neariso {

const char* to_string(BoundKind kind) noexcept {
  switch (kind) {
    case BoundKind::figiel_2eps: return "figiel-2eps";
    case BoundKind::nearsurj_2eps: return "nearsurj-2eps";
    case BoundKind::delta_onto_2e2d: return "delta-onto-2e2d";
    case BoundKind::hilbert_2e_d: return "hilbert-2e-d";
    case BoundKind::hilbert_pythag: return "hilbert-pythag";
  }
  return "unknown";
}

const std::vector<BoundKind>& all_bound_kinds() {
  static const std::vector<BoundKind> kinds = {
      BoundKind::figiel_2eps, BoundKind::nearsurj_2eps, BoundKind::delta_onto_2e2d,
      BoundKind::hilbert_2e_d, BoundKind::hilbert_pythag};
  return kinds;
}

BoundKind parse_bound_kind(std::string_view name) {
  for (BoundKind k : all_bound_kinds()) {
    if (name == to_string(k)) return k;
  }
  throw Error(Errc::invalid_argument, "unknown bound kind '" + std::string(name) + "'");
}

namespace {

bool needs_delta(BoundKind kind) {
  return kind == BoundKind::delta_onto_2e2d || kind == BoundKind::hilbert_2e_d ||
         kind == BoundKind::hilbert_pythag;
}

bool needs_hilbert(BoundKind kind) {
  return kind == BoundKind::hilbert_2e_d || kind == BoundKind::hilbert_pythag;
}

}  // namespace

bool bound_checkable(BoundKind kind, const MapInstance& f) {
  if (needs_delta(kind) && !f.claimed_delta) return false;
  if (needs_hilbert(kind) && !f.codomain.hilbert()) return false;
  return true;
}

bool bound_applicable(BoundKind kind, const MapInstance& f) {
  if (!bound_checkable(kind, f)) return false;
  switch (kind) {
    case BoundKind::figiel_2eps: return f.codomain.uniformly_convex();
    case BoundKind::nearsurj_2eps:
      return f.claimed_delta && f.target_subspace &&
             f.target_subspace->dim() == f.codomain.dim();
    default: return true;
  }
}

double bound_value(BoundKind kind, const MapInstance& f) {
  if (needs_delta(kind) && !f.claimed_delta) {
    throw Error(Errc::invalid_argument,
                std::string("bound ") + to_string(kind) + " needs a claimed delta");
  }
  const double eps = f.claimed_eps;
  const double delta = f.claimed_delta.value_or(0.0);
  switch (kind) {
    case BoundKind::figiel_2eps:
    case BoundKind::nearsurj_2eps: return 2.0 * eps;
    case BoundKind::delta_onto_2e2d: return 2.0 * eps + 2.0 * delta;
    case BoundKind::hilbert_2e_d: return 2.0 * eps + delta;
    case BoundKind::hilbert_pythag: return std::sqrt(4.0 * eps * eps + delta * delta);
  }
  return 0.0;
}

double bound_deviation(const MapInstance& f, const LinearOperator& a, BoundKind kind,
                       const Vector& x) {
  if (kind == BoundKind::figiel_2eps) return distance(a(f(x)), x, f.domain);
  return distance(f(x), a(x), f.codomain);
}

BoundReport check_bound(const MapInstance& f, const LinearOperator& a, BoundKind kind,
                        const Sampler& sampler) {
  if (kind == BoundKind::figiel_2eps) {
    if (a.role != OperatorRole::left_inverse || !(a.domain == f.codomain) ||
        !(a.codomain == f.domain)) {
      throw Error(Errc::invalid_argument, "figiel-2eps needs a left inverse from codomain to domain");
    }
  } else if (a.role != OperatorRole::isometry || !(a.domain == f.domain) ||
             !(a.codomain == f.codomain)) {
    throw Error(Errc::invalid_argument,
                std::string(to_string(kind)) + " needs an isometry from domain to codomain");
  }
  if (needs_hilbert(kind) && !f.codomain.hilbert()) {
    throw Error(Errc::invalid_argument,
                std::string(to_string(kind)) + " needs a Hilbert codomain, got " + f.codomain.label());
  }

  BoundReport report;
  report.kind = kind;
  report.label = f.id;
  report.bound = bound_value(kind, f);

  const SampleSet samples = sampler.draw(f.domain);
  double worst = -1.0;
  std::size_t at = 0;
  for (std::size_t i = 0; i < samples.points.size(); ++i) {
    const double dev = bound_deviation(f, a, kind, samples.points[i]);
    if (dev > worst) {
      worst = dev;
      at = i;
    }
  }
  report.measured = worst;
  report.argmax = samples.points[at];
  report.samples = samples.points.size();
  report.margin = report.bound - report.measured;
  report.passed = report.margin >= -1e-9;
  return report;
}

namespace {

constexpr double kExact = 1e-12;

Vector scalar(double t) { return Vector::Constant(1, t); }

// Deviation from Ut = (-t, 0) along 10^k; must exceed 10^k at k = 3.
SharpnessCheck reversed_isometry_growth(const MapInstance& f, const std::string& name) {
  const LinearOperator reversed = leading_axes_embedding(f.domain, f.codomain, -1.0);
  SharpnessCheck check;
  check.name = name;
  check.detail = "deviation from Ut = (-t, 0) grows without bound";
  check.expected = 1e3;
  bool increasing = true;
  double prev = -1.0;
  for (double x : {10.0, 100.0, 1000.0, 10000.0}) {
    const double dev = distance(f(scalar(x)), reversed(scalar(x)), f.codomain);
    increasing = increasing && dev > prev;
    prev = dev;
    check.series.emplace_back(x, dev);
    if (x == 1000.0) {
      check.measured = dev;
      check.at = scalar(x);
    }
  }
  check.passed = increasing && check.measured > check.expected;
  return check;
}

}  // namespace

std::vector<SharpnessCheck> sharpness_suite(double eps, double delta) {
  if (!(eps > 0.0) || !(delta > 0.0)) {
    throw Error(Errc::invalid_argument, "sharpness suite needs eps > 0 and delta > 0");
  }
  std::vector<SharpnessCheck> out;

  {
    const MapInstance f = make_sharp_l1(eps, delta);
    const LinearOperator u = *f.reference;
    const double corner = delta + eps;
    Sampler grid{.kind = SamplerKind::grid,
                 .radius = std::max(3.0, 4.0 * corner),
                 .step = 1e-3,
                 .extra_points = {scalar(corner)}};
    const BoundReport sup = check_bound(f, u, BoundKind::delta_onto_2e2d, grid);
    SharpnessCheck check;
    check.name = "sharp-l1/attain";
    check.detail = "sup ||f(x) - Ux|| over the grid equals 2 eps + 2 delta at x = delta + eps";
    check.expected = 2.0 * eps + 2.0 * delta;
    check.measured = sup.measured;
    check.at = sup.argmax;
    const double at_corner = bound_deviation(f, u, BoundKind::delta_onto_2e2d, scalar(corner));
    check.passed = std::abs(check.measured - check.expected) <= kExact &&
                   std::abs(at_corner - check.expected) <= kExact;
    out.push_back(std::move(check));
    out.push_back(reversed_isometry_growth(f, "sharp-l1/reversed"));
  }

  {
    const MapInstance f = make_ramp_hilbert(eps, delta);
    const LinearOperator u = *f.reference;
    const double r = delta * delta / (2.0 * eps);
    SharpnessCheck check;
    check.name = "ramp-hilbert/attain";
    check.detail = "||f(t) - Ut|| = delta for every sampled t >= r";
    check.expected = delta;
    double worst_gap = 0.0;
    double lowest = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 10000; ++k) {
      const double t = r + 1e-3 * k;
      const double dev = bound_deviation(f, u, BoundKind::hilbert_2e_d, scalar(t));
      if (dev < lowest) {
        lowest = dev;
        check.at = scalar(t);
      }
      worst_gap = std::max(worst_gap, std::abs(dev - delta));
    }
    check.measured = lowest;
    check.passed = worst_gap <= kExact;
    out.push_back(std::move(check));
    out.push_back(reversed_isometry_growth(f, "ramp-hilbert/reversed"));
  }

  {
    const MapInstance f = make_hyers_ulam(eps);
    const LinearOperator u = *f.reference;
    SharpnessCheck check;
    check.name = "hyers-ulam/unbounded";
    check.detail = "deviation sqrt(2 eps x) from Ut = (t, 0) strictly increases";
    check.expected = std::sqrt(2.0 * eps * 100.0);
    bool increasing = true;
    double prev = -1.0;
    for (double x : {10.0, 100.0, 1000.0, 10000.0}) {
      const double dev = bound_deviation(f, u, BoundKind::nearsurj_2eps, scalar(x));
      increasing = increasing && dev > prev;
      prev = dev;
      check.series.emplace_back(x, dev);
      if (x == 100.0) {
        check.measured = dev;
        check.at = scalar(x);
      }
    }
    check.passed = increasing && std::abs(check.measured - check.expected) <= kExact;
    out.push_back(std::move(check));
  }
  return out;
}

InnerProductCheck inner_product_bound_check(const MapInstance& f, const LinearOperator& u,
                                            const Sampler& sampler) {
  if (!f.codomain.hilbert()) {
    throw Error(Errc::invalid_argument,
                "inner product check needs a Hilbert codomain, got " + f.codomain.label());
  }
  if (!(u.domain == f.domain) || !(u.codomain == f.codomain)) {
    throw Error(Errc::dimension_mismatch, "reference isometry does not match the map");
  }
  const SampleSet samples = sampler.draw(f.domain);
  const std::size_t count = samples.points.size();
  Matrix images(f.codomain.dim(), count);
  Matrix embedded(f.codomain.dim(), count);
  Vector norms(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto c = static_cast<Eigen::Index>(i);
    images.col(c) = f(samples.points[i]);
    embedded.col(c) = u(samples.points[i]);
    norms[c] = norm(samples.points[i], f.domain);
  }
  const double eps = f.claimed_eps;

  InnerProductCheck out;
  std::size_t bi = 0;
  std::size_t bj = 0;
  double worst = -1.0;
  samples.for_each_pair([&](std::size_t i, std::size_t j) {
    const auto ci = static_cast<Eigen::Index>(i);
    const auto cj = static_cast<Eigen::Index>(j);
    const double lhs =
        std::abs(images.col(ci).dot(images.col(cj)) - embedded.col(ci).dot(embedded.col(cj)));
    const double rhs = 2.0 * eps * (norms[ci] + norms[cj] + eps);
    const double ratio =
        rhs > 0.0 ? lhs / rhs : (lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    if (ratio > worst) {
      worst = ratio;
      out.worst_lhs = lhs;
      bi = i;
      bj = j;
    }
  });
  out.worst_ratio = std::max(worst, 0.0);
  out.x = samples.points[bi];
  out.y = samples.points[bj];
  out.pairs = samples.pair_count();
  out.passed = out.worst_ratio <= 1.0 + 1e-9;
  return out;
}

Vector annihilate(const Vector& w, const Vector& z, const SpaceSpec& space) {
  const DualVector j = support_functional(z, space);
  return w - (j(w) / j(z)) * z;
}

FrechetDecay frechet_limit_check(const Vector& z, const Vector& w, const SpaceSpec& space) {
  if (!space.uniformly_convex()) {
    throw Error(Errc::not_uniformly_convex, "decay check needs 1 < p < inf");
  }
  detail::require_dim(w, space, "w");
  const DualVector j = support_functional(z, space);
  if (std::abs(j(w)) > 1e-12) {
    std::ostringstream os;
    os << "w is not annihilated by j(z): j(z) w = " << j(w);
    throw Error(Errc::invalid_argument, os.str());
  }
  const double nz = norm(z, space);
  const double nw = norm(w, space);
  FrechetDecay out;
  for (int k = 0; k <= 20; ++k) {
    const double t = std::ldexp(1.0, k);
    out.t.push_back(t);
    out.d.push_back(norm(t * z + w, space) - t * nz);
  }
  out.monotone = true;
  constexpr double kRound = 8.0 * std::numeric_limits<double>::epsilon();
  for (std::size_t k = 2; k + 1 < out.d.size(); ++k) {
    const double rounding = kRound * (out.t[k + 1] * nz + nw);
    if (out.d[k + 1] > out.d[k] + rounding) out.monotone = false;
  }
  out.decayed = out.d.back() <= 1e-4 * nw;
  out.passed = out.monotone && out.decayed;
  return out;
}

}  // namespace neariso
