#include "neariso/defect.hpp"

#include <algorithm>
#include <cmath>

#include "neariso/error.hpp"
#include "neariso/golden.hpp"

namespace neariso {

namespace {

Matrix as_columns(const std::vector<Vector>& points, std::size_t dim) {
  Matrix m(dim, points.size());
  for (std::size_t i = 0; i < points.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = points[i];
  return m;
}

Matrix images_of(const MapInstance& f, const std::vector<Vector>& points) {
  Matrix m(f.codomain.dim(), points.size());
  for (std::size_t i = 0; i < points.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = f(points[i]);
  return m;
}

const double* column(const Matrix& m, std::size_t i) {
  return m.data() + static_cast<std::ptrdiff_t>(i) * m.rows();
}

void mark_claim(DefectReport& report, std::optional<double> claim) {
  if (claim) report.consistent_with_claim = report.estimate <= *claim + 1e-9;
}

}  // namespace

double pair_defect(const MapInstance& f, const Vector& x, const Vector& y) {
  return std::abs(distance(f(x), f(y), f.codomain) - distance(x, y, f.domain));
}

DefectReport estimate_epsilon(const MapInstance& f, const Sampler& sampler) {
  const SampleSet samples = sampler.draw(f.domain);
  if (samples.pair_count() == 0) throw Error(Errc::invalid_argument, "sampler produced no pairs");
  const Matrix xs = as_columns(samples.points, f.domain.dim());
  const Matrix ys = images_of(f, samples.points);
  const std::size_t n = f.domain.dim();
  const std::size_t m = f.codomain.dim();
  const double p_in = f.domain.p();
  const double p_out = f.codomain.p();

  double best = -1.0;
  std::size_t bi = 0;
  std::size_t bj = 0;
  samples.for_each_pair([&](std::size_t i, std::size_t j) {
    const double dx = detail::pnorm_diff(column(xs, i), column(xs, j), n, p_in);
    const double dy = detail::pnorm_diff(column(ys, i), column(ys, j), m, p_out);
    const double d = std::abs(dy - dx);
    if (d > best) {
      best = d;
      bi = i;
      bj = j;
    }
  });

  DefectReport report;
  report.estimate = best;
  report.argmax = {samples.points[bi], samples.points[bj]};
  report.samples_used = samples.pair_count();
  mark_claim(report, f.claimed_eps);
  return report;
}

namespace {

// Points of `target` inside the ball of radius `radius`, produced by running
// the sampler pattern on the coefficient space. The coefficient radius is
// large enough that every subspace point in the ball has coefficients inside it.
std::vector<Vector> subspace_samples(const Subspace& target, const Sampler& sampler,
                                     double radius) {
  const SpaceSpec& ambient = target.ambient();
  const Matrix& basis = target.basis();
  const double sigma_min = Eigen::JacobiSVD<Matrix>(basis).singularValues().minCoeff();
  const double m = static_cast<double>(ambient.dim());
  const double p = ambient.p();
  // ||v||_p >= factor * ||v||_2.
  const double factor = p >= 2.0 ? (p == kInf ? 1.0 / std::sqrt(m) : std::pow(m, 1.0 / p - 0.5))
                                 : 1.0;
  const SpaceSpec coeff_space(target.dim(), 2.0);

  Sampler coeff = sampler;
  coeff.radius = radius / (sigma_min * factor);
  coeff.step = sampler.effective_step(target.dim());
  coeff.extra_points.clear();
  const SampleSet raw = coeff.draw(coeff_space);

  std::vector<Vector> out;
  out.reserve(raw.points.size());
  for (const Vector& c : raw.points) {
    Vector y = basis * c;
    if (norm(y, ambient) <= radius * (1.0 + 1e-12)) out.push_back(std::move(y));
  }
  return out;
}

}  // namespace

DeltaReport estimate_delta(const MapInstance& f, const Subspace& target, const Sampler& sampler) {
  if (!(target.ambient() == f.codomain)) {
    throw Error(Errc::dimension_mismatch, "subspace does not lie in the codomain of the map");
  }
  const SampleSet samples = sampler.draw(f.domain);
  if (samples.points.empty()) throw Error(Errc::invalid_argument, "sampler produced no points");
  const Matrix images = images_of(f, samples.points);
  // Under the claimed constants every preimage of a point of norm <= R - eps - delta
  // lies in the sampled ball of radius R.
  double reach = sampler.radius;
  if (f.claimed_delta && sampler.radius > f.claimed_eps + *f.claimed_delta) {
    reach = sampler.radius - f.claimed_eps - *f.claimed_delta;
  }
  const std::vector<Vector> targets = subspace_samples(target, sampler, reach);
  if (targets.empty()) throw Error(Errc::invalid_argument, "no subspace samples inside the radius");

  const std::size_t m = f.codomain.dim();
  const double p = f.codomain.p();
  const std::size_t count = samples.points.size();

  DeltaReport out;

  // Candidate preimages of a subspace point: every sampled domain point and,
  // when the map carries a reference isometry, its left inverse applied to
  // the point.
  std::optional<Matrix> pullback;
  if (f.reference && f.reference->codomain == f.codomain) {
    pullback = left_pseudo_inverse(f.reference->matrix);
  }

  double onto = -1.0;
  std::size_t onto_y = 0;
  Vector onto_x;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    double nearest = kInf;
    std::size_t at = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const double d = detail::pnorm_diff(column(images, i), targets[k].data(), m, p);
      if (d < nearest) {
        nearest = d;
        at = i;
      }
    }
    Vector best_x = samples.points[at];
    if (pullback) {
      Vector x = *pullback * targets[k];
      const double d = distance(f(x), targets[k], f.codomain);
      if (d < nearest) {
        nearest = d;
        best_x = std::move(x);
      }
    }
    if (nearest > onto) {
      onto = nearest;
      onto_y = k;
      onto_x = std::move(best_x);
    }
  }
  out.onto.estimate = onto;
  out.onto.argmax = {targets[onto_y], onto_x};
  out.onto.samples_used = targets.size() * (count + (pullback ? 1 : 0));

  double into = -1.0;
  std::size_t into_x = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const Vector y = images.col(static_cast<Eigen::Index>(i));
    const double d = distance_to_subspace(y, target, f.codomain).distance;
    if (d > into) {
      into = d;
      into_x = i;
    }
  }
  out.into.estimate = into;
  out.into.argmax = {samples.points[into_x]};
  out.into.samples_used = count;

  out.overall = onto >= into ? out.onto : out.into;
  out.overall.samples_used = out.onto.samples_used + out.into.samples_used;
  if (target.dim() > 0 && f.claimed_delta) {
    mark_claim(out.overall, f.claimed_delta);
    mark_claim(out.onto, f.claimed_delta);
    mark_claim(out.into, f.claimed_delta);
  }
  return out;
}

SubspaceDistance distance_to_subspace(const Vector& y, const Subspace& target,
                                      const SpaceSpec& space) {
  detail::require_dim(y, space, "point");
  if (!(target.ambient() == space)) {
    throw Error(Errc::dimension_mismatch, "subspace does not lie in the given space");
  }
  const Matrix& basis = target.basis();
  // Euclidean projection coefficients: the exact answer for p = 2 and the
  // starting point of the sweeps otherwise.
  Vector coeffs = basis.colPivHouseholderQr().solve(y);

  if (!space.hilbert()) {
    if (!space.smooth() && target.dim() > 1) {
      throw Error(Errc::unsupported,
                  "distance to a multi-dimensional subspace needs 1 < p < inf, got " + space.label());
    }
    const double p = space.p();
    const std::size_t n = space.dim();
    Vector residual = y - basis * coeffs;
    for (int sweep = 0; sweep < 10000; ++sweep) {
      double largest_move = 0.0;
      for (Eigen::Index k = 0; k < basis.cols(); ++k) {
        const Vector b = basis.col(k);
        const double rho = detail::pnorm(residual.data(), n, p);
        if (rho == 0.0) break;
        // Any useful move t has ||t b|| <= 2 ||residual||.
        const double reach = 2.0 * rho / detail::pnorm(b.data(), n, p);
        Vector trial(n);
        const detail::LineMinimum best = detail::golden_section_minimize(
            [&](double t) {
              trial = residual - t * b;
              return detail::pnorm(trial.data(), n, p);
            },
            -reach, reach, 1e-13 * std::max(1.0, reach));
        if (best.value < rho) {
          coeffs[k] += best.x;
          residual -= best.x * b;
          largest_move = std::max(largest_move, std::abs(best.x));
        }
      }
      if (largest_move < 1e-10) break;
    }
  }

  SubspaceDistance out;
  out.coeffs = coeffs;
  out.nearest = basis * coeffs;
  out.distance = distance(y, out.nearest, space);
  return out;
}

}  // namespace neariso
