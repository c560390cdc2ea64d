#include "neariso/sampler.hpp"

#include <cmath>
#include <random>
#include <string>

#include "neariso/error.hpp"

namespace neariso {

const char* to_string(SamplerKind kind) noexcept {
  switch (kind) {
    case SamplerKind::grid: return "grid";
    case SamplerKind::random: return "random";
    case SamplerKind::hybrid: return "hybrid";
  }
  return "unknown";
}

SamplerKind parse_sampler_kind(std::string_view name) {
  if (name == "grid") return SamplerKind::grid;
  if (name == "random") return SamplerKind::random;
  if (name == "hybrid") return SamplerKind::hybrid;
  throw Error(Errc::invalid_argument, "unknown sampler kind '" + std::string(name) + "'");
}

double Sampler::effective_step(std::size_t dim) const {
  if (step > 0.0) return step;
  return dim == 1 ? radius / 1000.0 : radius / 10.0;
}

namespace {

constexpr std::size_t kMaxGridPerAxis = 50'000'000;

Vector random_direction(const SpaceSpec& space, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Vector u(space.dim());
  for (;;) {
    for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = unit(rng);
    const double n = norm(u, space);
    if (n > 1e-3) return u / n;
  }
}

Vector random_ball_point(const SpaceSpec& space, double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit01(0.0, 1.0);
  Vector dir = random_direction(space, rng);
  const double r = radius * std::pow(unit01(rng), 1.0 / static_cast<double>(space.dim()));
  return r * dir;
}

}  // namespace

SampleSet Sampler::draw(const SpaceSpec& space) const {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(Errc::invalid_argument, "sampler radius must be positive and finite");
  }
  if (step < 0.0) throw Error(Errc::invalid_argument, "sampler step must be positive");
  const std::size_t dim = space.dim();
  SampleSet out;

  const bool use_grid = kind != SamplerKind::random;
  const bool use_random = kind == SamplerKind::random || (kind == SamplerKind::hybrid && dim > 1);

  if (use_grid) {
    const double h = effective_step(dim);
    const double steps = std::floor(radius / h + 1e-9);
    if (steps > static_cast<double>(kMaxGridPerAxis)) {
      throw Error(Errc::invalid_argument, "sampler grid too fine for the radius");
    }
    const auto n = static_cast<long long>(steps);
    if (dim == 1) {
      for (long long k = -n; k <= n; ++k) {
        out.points.push_back(Vector::Constant(1, static_cast<double>(k) * h));
      }
      out.zero_index = static_cast<std::size_t>(n);
    } else {
      out.points.push_back(Vector::Zero(dim));
      out.zero_index = 0;
      for (std::size_t i = 0; i < dim; ++i) {
        for (long long k = -n; k <= n; ++k) {
          if (k == 0) continue;
          Vector v = Vector::Zero(dim);
          v[i] = static_cast<double>(k) * h;
          out.points.push_back(std::move(v));
        }
      }
    }
  } else {
    out.points.push_back(Vector::Zero(dim));
    out.zero_index = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      for (double sgn : {-1.0, 1.0}) {
        Vector v = Vector::Zero(dim);
        v[i] = sgn * radius;
        out.points.push_back(std::move(v));
      }
    }
  }

  for (const Vector& x : extra_points) {
    detail::require_dim(x, space, "extra sample point");
    out.points.push_back(x);
  }
  out.dense = out.points.size();

  if (use_random && count > 0) {
    std::mt19937_64 rng(seed);
    const std::size_t first = out.points.size();
    for (std::size_t k = 0; k < count; ++k) out.points.push_back(random_ball_point(space, radius, rng));
    for (std::size_t k = 0; k < count; ++k) {
      out.sparse_pairs.emplace_back(out.zero_index, first + k);
      if (k + 1 < count) out.sparse_pairs.emplace_back(first + k, first + k + 1);
    }
  }
  return out;
}

std::vector<Vector> unit_sphere_sample(const SpaceSpec& space, std::size_t count,
                                       std::uint64_t seed) {
  std::vector<Vector> out;
  const std::size_t dim = space.dim();
  for (std::size_t i = 0; i < dim; ++i) {
    for (double sgn : {1.0, -1.0}) {
      Vector v = Vector::Zero(dim);
      v[i] = sgn;
      out.push_back(std::move(v));
    }
  }
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < count; ++k) out.push_back(random_direction(space, rng));
  return out;
}

}  // namespace neariso
