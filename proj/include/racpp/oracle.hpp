#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "racpp/model.hpp"

namespace racpp {

inline constexpr std::uint64_t kEnumerationCap = 1'000'000;

/// Villagers with individual effectiveness. `villager_eff[j]` applies to
/// villager j wherever it is placed; `base.villager_budget` must equal its length.
struct VillagerSpecificInstance {
  Instance base;
  std::vector<double> villager_eff;
};

struct VillagerSpecificResult {
  SolveResult result;
  std::vector<std::size_t> assignment;  // target of each villager
};

/// Number of villager placements with at most r_v villagers over n targets,
/// saturated at UINT64_MAX.
std::uint64_t placement_count(std::size_t n, std::int64_t villagers);

/// Exact optimum by enumerating every villager placement (up to the budget)
/// and maximising effort on each candidate attacked target by bisection.
/// Throws EnumerationCapExceeded when more than `cap` placements exist.
SolveResult solve_oracle(const Instance& instance, std::uint64_t cap = kEnumerationCap);
SolveResult solve_oracle(const TargetSpecificInstance& instance,
                         std::uint64_t cap = kEnumerationCap);

/// Exact optimum over all n^r_v villager-to-target assignments.
VillagerSpecificResult solve_oracle_villager_specific(const VillagerSpecificInstance& instance,
                                                      std::uint64_t cap = kEnumerationCap);

}  // namespace racpp
