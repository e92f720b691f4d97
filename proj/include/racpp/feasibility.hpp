#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "racpp/model.hpp"

namespace racpp {

/// Resources pinned on the candidate attacked target.
struct FeasibilityQuery {
  std::size_t target = 0;
  double effort = 0.0;
  std::int64_t villagers = 0;
};

/// `witness` is present exactly when `feasible` holds: a valid profile that
/// keeps the query's allocation on the target and makes it a best response.
struct FeasibilityAnswer {
  bool feasible = false;
  std::optional<StrategyProfile> witness;
};

/// Least coverage on target i that brings its attacker utility down to u.
/// nullopt when no coverage suffices (u below the target's penalty).
std::optional<double> min_valid_coverage(const Instance& instance, std::size_t i, double u);

/// Villager coverage exceeding the minimum valid coverage at level u, summed
/// over every target except i_star. Throws DomainError if some target cannot
/// reach u at all.
double total_wasted_coverage(const Instance& instance, std::span<const std::int64_t> villagers,
                             double u, std::size_t i_star);

/// Decides whether the rest of the budget can make `q.target` the attacker's
/// best response. Villagers are placed greedily without waste, leftovers go to
/// the largest residual needs, and rangers fill what remains.
FeasibilityAnswer check_consistent(const Instance& instance, const FeasibilityQuery& q);

/// Same decision when effectiveness varies by target. Each spare villager goes
/// where it saves the most ranger effort.
FeasibilityAnswer check_consistent_ts(const TargetSpecificInstance& instance,
                                      const FeasibilityQuery& q);

}  // namespace racpp
