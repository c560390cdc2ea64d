#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "neariso/sampler.hpp"

namespace neariso {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 11;

/// Runs one acceptance criterion (1..kCriterionCount). Failures inside the
/// library are reported as a failed criterion, never thrown.
CriterionResult run_criterion(int id, std::uint64_t seed = kDefaultSeed);

std::vector<CriterionResult> run_acceptance(std::uint64_t seed = kDefaultSeed);

}  // namespace neariso
