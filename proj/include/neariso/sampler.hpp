#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "neariso/space.hpp"

namespace neariso {

/// Seed used whenever the caller does not supply one.
inline constexpr std::uint64_t kDefaultSeed = 20020101;

enum class SamplerKind { grid, random, hybrid };

const char* to_string(SamplerKind kind) noexcept;
SamplerKind parse_sampler_kind(std::string_view name);

/// A finite sample of a space together with the pairs used for pairwise
/// estimates. Every pair among the leading `dense` points is used; the
/// remaining points only take part through `sparse_pairs`.
struct SampleSet {
  std::vector<Vector> points;
  std::size_t dense = 0;
  std::size_t zero_index = 0;
  std::vector<std::pair<std::size_t, std::size_t>> sparse_pairs;

  std::size_t pair_count() const noexcept {
    return dense * (dense - (dense > 0 ? 1 : 0)) / 2 + sparse_pairs.size();
  }

  /// Visits pairs in a fixed order: dense pairs (i < j) lexicographically,
  /// then the sparse pairs in storage order.
  template <class Visit>
  void for_each_pair(Visit&& visit) const {
    for (std::size_t i = 0; i < dense; ++i) {
      for (std::size_t j = i + 1; j < dense; ++j) visit(i, j);
    }
    for (const auto& [i, j] : sparse_pairs) visit(i, j);
  }
};

/// Deterministic sample generator. Grid samples are the points k*step*e_i on
/// every coordinate axis inside the ball of the given radius; random samples
/// are seeded points of that ball, chained into consecutive pairs and each
/// paired with the origin. A hybrid sampler uses the axis grid and, in
/// dimension > 1, the random points as well. Extra points join the dense
/// block, so they are paired with every grid point.
struct Sampler {
  SamplerKind kind = SamplerKind::hybrid;
  double radius = 5.0;
  /// 0 selects radius/1000 on the line and radius/10 in higher dimensions.
  double step = 0.0;
  std::size_t count = 10000;
  std::uint64_t seed = kDefaultSeed;
  std::vector<Vector> extra_points;

  double effective_step(std::size_t dim) const;
  SampleSet draw(const SpaceSpec& space) const;
};

/// Unit vectors of `space`: the signed axis directions followed by `count`
/// seeded random directions.
std::vector<Vector> unit_sphere_sample(const SpaceSpec& space, std::size_t count,
                                       std::uint64_t seed);

}  // namespace neariso
