#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "racpp/model.hpp"

namespace racpp {

inline constexpr double kDefaultTdbsEpsilon = 1e-3;

struct TdbsConfig {
  double epsilon = kDefaultTdbsEpsilon;  // ranger-effort search resolution
  double value_bound = 1.0;              // M: bound on every absolute input value
};

/// Config for `instance` with M taken from value_bound(instance).
TdbsConfig make_tdbs_config(const Instance& instance, double epsilon = kDefaultTdbsEpsilon);

/// One feasibility check issued during the search, recorded in call order.
struct FeasibilityProbe {
  std::size_t target = 0;
  double effort = 0.0;
  std::int64_t villagers = 0;
  bool feasible = false;
};

/// Two-dimensional binary search. For every target that can be made the
/// attacker's best response, finds the largest villager count on it, then the
/// largest ranger effort to within epsilon, and keeps the best target.
/// The returned utility is within e_p * 2M * epsilon of the optimum.
SolveResult solve_tdbs(const Instance& instance, const TdbsConfig& config,
                       const SolveLimits& limits = {},
                       std::vector<FeasibilityProbe>* probes = nullptr);

/// Search over per-target effectiveness. Every consistent villager count on
/// the candidate target is tried, each followed by the effort search.
SolveResult solve_tdbs(const TargetSpecificInstance& instance, const TdbsConfig& config,
                       const SolveLimits& limits = {},
                       std::vector<FeasibilityProbe>* probes = nullptr);

}  // namespace racpp
