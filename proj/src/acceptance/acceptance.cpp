#include "neariso/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>

#include "neariso/construct.hpp"
#include "neariso/defect.hpp"
#include "neariso/maps.hpp"
#include "neariso/oracles.hpp"
#include "neariso/verify.hpp"

namespace neariso {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects failed expectations; the first few are kept for the detail line.
class Tally {
public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ << (failures_ > 1 ? "; " : "") << what;
  }

  void note(const std::string& what) { info_ << (!info_.str().empty() ? ", " : "") << what; }

  bool ok() const { return failures_ == 0; }

  std::string detail() const {
    std::ostringstream os;
    os << info_.str();
    if (failures_ > 0) os << (!info_.str().empty() ? " | " : "") << failures_ << " failed: " << notes_.str();
    return os.str();
  }

private:
  int checks_ = 0;
  int failures_ = 0;
  std::ostringstream notes_;
  std::ostringstream info_;
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

Vector scalar(double t) { return Vector::Constant(1, t); }

// 1. The l^1-plane map attains 2 eps + 2 delta.
void sharp_l1_attainment(Tally& tally, std::uint64_t) {
  const auto start = Clock::now();
  const MapInstance f = make_sharp_l1(0.5, 0.25);
  const Sampler grid{.kind = SamplerKind::grid, .radius = 3.0, .step = 1e-3,
                     .extra_points = {scalar(0.75)}};
  const BoundReport report = check_bound(f, *f.reference, BoundKind::delta_onto_2e2d, grid);
  const double elapsed = seconds_since(start);
  tally.note("measured " + num(report.measured) + " at x = " + num(report.argmax[0]));
  tally.expect(std::abs(report.measured - 1.5) <= 1e-12, "sup deviation is not 2 eps + 2 delta");
  tally.expect(std::abs(report.argmax[0] - 0.75) <= 1e-12, "sup not attained at delta + eps");
  tally.expect(report.passed, "bound 2 eps + 2 delta violated");
  tally.expect(elapsed < 1.0, "runtime " + num(elapsed) + " s");

  const LinearOperator reversed = leading_axes_embedding(f.domain, f.codomain, -1.0);
  const double far = distance(f(scalar(1e3)), reversed(scalar(1e3)), f.codomain);
  tally.note("reversed isometry deviation at 1e3: " + num(far));
  tally.expect(far > 1e3, "reversed isometry stays bounded");
}

// 2. The ramp into the Euclidean plane.
void ramp_example(Tally& tally, std::uint64_t) {
  const double eps = 0.5;
  const double delta = 0.25;
  const double r = delta * delta / (2.0 * eps);
  const MapInstance f = make_ramp_hilbert(eps, delta);
  const Sampler grid{.kind = SamplerKind::grid, .radius = 5.0, .step = 1e-3};

  const DefectReport eps_hat = estimate_epsilon(f, grid);
  tally.note("eps_hat " + num(eps_hat.estimate));
  tally.expect(eps_hat.estimate <= eps + 1e-9, "ramp is not an eps-nearisometry on the grid");

  const SampleSet samples = grid.draw(f.domain);
  int beyond = 0;
  for (const Vector& x : samples.points) {
    if (x[0] < r) continue;
    ++beyond;
    const double dev = bound_deviation(f, *f.reference, BoundKind::hilbert_2e_d, x);
    tally.expect(std::abs(dev - delta) <= 1e-12, "deviation at t = " + num(x[0]) + " is " + num(dev));
  }
  tally.expect(beyond > 0, "no samples beyond r");

  for (BoundKind kind : {BoundKind::hilbert_2e_d, BoundKind::hilbert_pythag}) {
    const BoundReport b = check_bound(f, *f.reference, kind, grid);
    tally.note(std::string(to_string(kind)) + " margin " + num(b.margin));
    tally.expect(b.passed && b.margin > 0.0, std::string(to_string(kind)) + " has no positive margin");
  }

  const DeltaReport d = estimate_delta(f, *f.target_subspace, grid);
  tally.note("delta_hat " + num(d.overall.estimate));
  tally.expect(std::abs(d.overall.estimate - delta) <= 1e-9, "delta_hat is not delta");
}

// 3. Unbounded deviation of the square-root example.
void hyers_ulam_growth(Tally& tally, std::uint64_t) {
  const MapInstance f = make_hyers_ulam(0.5);
  double prev = -1.0;
  for (double x : {10.0, 100.0, 1000.0, 10000.0}) {
    const double dev = bound_deviation(f, *f.reference, BoundKind::nearsurj_2eps, scalar(x));
    tally.expect(dev > prev, "deviation does not increase at x = " + num(x));
    prev = dev;
    if (x == 100.0) {
      tally.note("deviation at 100: " + num(dev));
      tally.expect(std::abs(dev - 10.0) <= 1e-12, "deviation at 100 is not 10");
    }
  }
}

// 4. Directional limit and its rate certificate.
void directional_convergence(Tally& tally, std::uint64_t seed) {
  const auto start = Clock::now();
  const MapInstance f = make_hyers_ulam(0.5);
  const Vector x = scalar(1.0);
  const DirectionalLimit lim = directional_limit(f, x, 1e-3);
  Vector target(2);
  target << 1.0, 0.0;
  const double err = norm(lim.value - target, f.codomain);
  tally.note("s_used " + num(lim.certificate.s_used) + ", rate " + num(lim.certificate.rate_bound) +
             ", error " + num(err));
  tally.expect(err <= 1e-3, "limit point is farther than 1e-3 from (1, 0)");

  const double s = lim.certificate.s_used;
  const Vector at_s = f(s * x) / s;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> expo(0.0, 20.0);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double t = s * std::exp2(expo(rng)) * (1.0 + 1e-9);
    worst = std::max(worst, norm(at_s - f(t * x) / t, f.codomain));
  }
  tally.note("worst Cauchy gap " + num(worst));
  tally.expect(worst <= lim.certificate.rate_bound, "Cauchy gap exceeds the rate bound");
  const double elapsed = seconds_since(start);
  tally.expect(elapsed < 1.0, "runtime " + num(elapsed) + " s");
}

// 5. Ray functional sandwich.
void ray_sandwich(Tally& tally, std::uint64_t seed) {
  const SpaceSpec line(1, 2.0);
  const SpaceSpec plane3(2, 3.0);
  const std::vector<MapInstance> rays = {
      make_linear_map(leading_axes_embedding(line, plane3)),
      make_hyers_ulam(0.5),
      make_ramp_hilbert(0.5, 0.25),
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1e3);
  for (const MapInstance& f : rays) {
    const RayFunctional ray = ray_functional(f, 1e6);
    const double eps = f.claimed_eps;
    tally.expect(std::abs(dual_norm(ray.functional, f.codomain) - 1.0) <= 1e-12,
                 f.id + ": functional does not have norm one");
    double worst_low = kInf;
    for (int k = 0; k < 100; ++k) {
      const double t = k == 0 ? 0.0 : (k == 99 ? 1e3 : unit(rng));
      const double value = ray.functional(f(scalar(t)));
      worst_low = std::min(worst_low, value - (t - 2.0 * eps));
      tally.expect(value >= t - 2.0 * eps - 1e-3 && value <= t + eps,
                   f.id + ": sandwich fails at t = " + num(t));
    }
    tally.note(f.id + " lower margin " + num(worst_low));
  }
}

struct Planted {
  MapInstance f;
  double eps;
};

// The perturbed family: 20 instances into l^2_4 and 20 into l^3_4.
std::vector<Planted> planted_family(std::uint64_t seed) {
  std::vector<Planted> out;
  for (double p : {2.0, 3.0}) {
    const SpaceSpec target(4, p);
    for (int k = 0; k < 20; ++k) {
      const double eps = k % 2 == 0 ? 0.1 : 0.5;
      const SpaceSpec source(static_cast<std::size_t>(2 + k % 3), p);
      const std::uint64_t s = seed + 1000 * static_cast<std::uint64_t>(p) + 2 * k;
      const LinearOperator u = random_coordinate_isometry(source, target, s);
      out.push_back({make_perturbed_isometry(source, target, u, eps, s + 1), eps});
    }
  }
  return out;
}

constexpr double kFitTol = 1e-5;

Sampler family_sampler(std::uint64_t seed) {
  return Sampler{.kind = SamplerKind::random, .radius = 10.0, .count = 10000, .seed = seed};
}

// 6. Left inverse bound.
void left_inverse_bound(Tally& tally, std::uint64_t seed) {
  int built = 0;
  double worst_ratio = 0.0;
  double worst_norm_gap = 0.0;
  for (const Planted& inst : planted_family(seed)) {
    try {
      const LeftInverse li = build_left_inverse_T(inst.f, kFitTol);
      ++built;
      worst_norm_gap = std::max(worst_norm_gap, std::abs(li.norm_estimate - 1.0));
      tally.expect(std::abs(li.norm_estimate - 1.0) <= 1e-6, "sampled ||T|| is not 1");
      const BoundReport b = check_bound(inst.f, li.t, BoundKind::figiel_2eps, family_sampler(seed));
      tally.expect(b.passed && b.samples >= 10000, inst.f.codomain.label() + ": ||Tf(x) - x|| > 2 eps");
      worst_ratio = std::max(worst_ratio, b.measured / b.bound);
    } catch (const std::exception& e) {
      tally.expect(false, e.what());
    }
  }
  tally.note(std::to_string(built) + " operators, worst measured/bound " + num(worst_ratio) +
             ", worst | ||T|| - 1 | " + num(worst_norm_gap));
}

// 7. Nearsurjective bound with the fitted isometry.
void nearsurjective_bound(Tally& tally, std::uint64_t seed) {
  double worst_ratio = 0.0;
  for (const Planted& inst : planted_family(seed)) {
    try {
      const IsometryFit fit = build_linear_isometry(inst.f, kFitTol);
      const BoundReport b = check_bound(inst.f, fit.op, BoundKind::nearsurj_2eps, family_sampler(seed));
      tally.expect(b.passed, inst.f.codomain.label() + ": ||f(x) - Ux|| > 2 eps");
      worst_ratio = std::max(worst_ratio, b.measured / b.bound);
    } catch (const std::exception& e) {
      tally.expect(false, e.what());
    }
  }
  tally.note("worst measured/bound " + num(worst_ratio));
}

// 8. Duality map against finite differences.
void duality_map(Tally& tally, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> dims(1, 8);
  double worst = 0.0;
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    for (int k = 0; k < 100; ++k) {
      const SpaceSpec space(static_cast<std::size_t>(dims(rng)), p);
      Vector z(space.dim());
      for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = gauss(rng);
      const DualVector j = support_functional(z, space);
      const Vector fd = oracle::norm_gradient_fd(z, space);
      const double rel = (j.coords - fd).lpNorm<Eigen::Infinity>() / fd.lpNorm<Eigen::Infinity>();
      worst = std::max(worst, rel);
      tally.expect(rel <= 1e-6, "gradient mismatch for " + space.label());
      tally.expect(std::abs(j(z) - norm(z, space)) <= 1e-12 * norm(z, space), "j(z) z != ||z||");
      tally.expect(std::abs(dual_norm(j, space) - 1.0) <= 1e-12, "||j(z)|| != 1");
    }
  }
  tally.note("worst relative gradient error " + num(worst));
}

// 9. Moduli: oracle agreement, round trips, and the ball inequality.
void moduli_consistency(Tally& tally, std::uint64_t seed) {
  double worst_oracle = 0.0;
  for (double p : {2.0, 3.0, 4.0}) {
    const SpaceSpec space(2, p);
    for (int k = 1; k <= 19; ++k) {
      const double s = 0.1 * k;
      const double gap = std::abs(oracle::modulus_brute_force(s, p) - modulus_of_convexity(s, space));
      worst_oracle = std::max(worst_oracle, gap);
      tally.expect(gap <= 1e-4, "brute-force modulus disagrees at p = " + num(p) + ", s = " + num(s));
    }
  }
  tally.note("oracle gap " + num(worst_oracle));

  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const SpaceSpec space(2, p);
    for (int k = 0; k <= 20; ++k) {
      const double t = 0.05 * k;
      tally.expect(modulus_of_convexity(gamma(t, space), space) <= t + 1e-9,
                   "tau(gamma(t)) > t at p = " + num(p));
    }
    for (int k = 0; k <= 20; ++k) {
      const double s = 0.1 * k;
      tally.expect(gamma(modulus_of_convexity(s, space), space) >= s - 1e-9,
                   "gamma(tau(s)) < s at p = " + num(p));
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> dims(1, 4);
  const double ps[] = {1.5, 2.0, 3.0, 4.0};
  int violations = 0;
  int configs = 0;
  double tightest = kInf;
  while (configs < 10000) {
    const SpaceSpec space(static_cast<std::size_t>(dims(rng)), ps[configs % 4]);
    const double radius = 0.5 + 4.5 * unit(rng);
    auto ball_point = [&] {
      Vector v(space.dim());
      for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = 2.0 * unit(rng) - 1.0;
      const double n = norm(v, space);
      return n > 0.0 ? Vector(v * (radius * std::pow(unit(rng), 0.25) / n)) : v;
    };
    const Vector x = ball_point();
    const Vector y = ball_point();
    const double half_sum = 0.5 * norm(x + y, space);
    if (half_sum <= 0.0 || half_sum >= radius) continue;
    // Half of the configurations sit exactly on the constraint.
    const double r = configs % 2 == 0 ? half_sum : half_sum * unit(rng);
    if (r <= 0.0) continue;
    ++configs;
    const double bound = radius * gamma(1.0 - r / radius, space);
    const double gap = bound - norm(x - y, space);
    tightest = std::min(tightest, gap);
    if (gap < -1e-9) ++violations;
  }
  tally.note(std::to_string(configs) + " ball configs, tightest margin " + num(tightest));
  tally.expect(violations == 0, std::to_string(violations) + " ball inequality violations");
}

// 10. Decay of ||tz + w|| - t||z|| along annihilated directions.
void frechet_decay(Tally& tally, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> dims(2, 6);
  double worst = 0.0;
  for (double p : {1.5, 3.0}) {
    for (int k = 0; k < 50; ++k) {
      const SpaceSpec space(static_cast<std::size_t>(dims(rng)), p);
      Vector z(space.dim());
      Vector w(space.dim());
      for (Eigen::Index i = 0; i < z.size(); ++i) {
        z[i] = gauss(rng);
        w[i] = gauss(rng);
      }
      w = annihilate(w, z, space);
      const FrechetDecay decay = frechet_limit_check(z, w, space);
      worst = std::max(worst, decay.d.back() / norm(w, space));
      tally.expect(decay.monotone, "decay is not monotone for " + space.label());
      tally.expect(decay.decayed, "d(2^20) > 1e-4 ||w|| for " + space.label());
    }
  }
  tally.note("worst d(2^20)/||w|| " + num(worst));
}

// 11. Everything is exact when eps = delta = 0.
void degenerate_suite(Tally& tally, std::uint64_t seed) {
  std::vector<MapInstance> maps = {make_sharp_l1(0.0, 0.0), make_ramp_hilbert(0.0, 0.0),
                                   make_hyers_ulam(0.0)};
  for (double p : {2.0, 3.0}) {
    const SpaceSpec source(3, p);
    const SpaceSpec target(4, p);
    maps.push_back(make_perturbed_isometry(
        source, target, random_coordinate_isometry(source, target, seed + 7), 0.0, seed + 8));
  }
  int reports = 0;
  for (const MapInstance& f : maps) {
    const Sampler sampler{.kind = SamplerKind::hybrid, .radius = 5.0, .count = 2000, .seed = seed};
    try {
      const LeftInverse from_reference = build_left_inverse_T(f, *f.reference);
      tally.expect(from_reference.inverse_defect <= 1e-12, f.id + ": T phi != I");
      tally.expect(std::abs(from_reference.norm_estimate - 1.0) <= 1e-12, f.id + ": ||T|| != 1");
      for (BoundKind kind : all_bound_kinds()) {
        if (!bound_checkable(kind, f)) continue;
        const LinearOperator& a = kind == BoundKind::figiel_2eps ? from_reference.t : *f.reference;
        const BoundReport b = check_bound(f, a, kind, sampler);
        ++reports;
        tally.expect(b.passed && b.bound == 0.0 && b.measured <= 1e-12,
                     f.id + ": " + to_string(kind) + " measured " + num(b.measured));
      }
      if (f.codomain.uniformly_convex()) {
        const IsometryFit fit = build_linear_isometry(f, 1e-9);
        tally.expect((fit.op.matrix - f.reference->matrix).cwiseAbs().maxCoeff() <= 1e-12,
                     f.id + ": fitted isometry differs from the planted one");
        tally.expect(fit.isometry_defect <= 1e-12, f.id + ": fitted operator is not isometric");
        const LeftInverse li = build_left_inverse_T(f, 1e-9);
        tally.expect(li.inverse_defect <= 1e-12, f.id + ": fitted T phi != I");
      }
    } catch (const std::exception& e) {
      tally.expect(false, f.id + ": " + e.what());
    }
  }
  tally.note(std::to_string(maps.size()) + " maps, " + std::to_string(reports) + " bound reports");
}

struct Criterion {
  const char* name;
  void (*run)(Tally&, std::uint64_t);
};

const Criterion kCriteria[kCriterionCount] = {
    {"sharp 2eps+2delta on the l1 plane", sharp_l1_attainment},
    {"ramp example in the Euclidean plane", ramp_example},
    {"unbounded square-root deviation", hyers_ulam_growth},
    {"directional limit convergence", directional_convergence},
    {"ray functional sandwich", ray_sandwich},
    {"left inverse within 2eps", left_inverse_bound},
    {"nearsurjective bound 2eps", nearsurjective_bound},
    {"duality map equals norm gradient", duality_map},
    {"moduli consistency and ball inequality", moduli_consistency},
    {"Frechet decay along annihilated directions", frechet_decay},
    {"degenerate eps = delta = 0 suite", degenerate_suite},
};

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  CriterionResult out;
  out.id = id;
  if (id < 1 || id > kCriterionCount) {
    out.name = "unknown";
    out.detail = "no such criterion";
    return out;
  }
  const Criterion& c = kCriteria[id - 1];
  out.name = c.name;
  const auto start = Clock::now();
  Tally tally;
  try {
    c.run(tally, seed);
  } catch (const std::exception& e) {
    tally.expect(false, std::string("error: ") + e.what());
  }
  out.seconds = seconds_since(start);
  out.passed = tally.ok();
  out.detail = tally.detail();
  return out;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, seed));
  return out;
}

}  // namespace neariso
