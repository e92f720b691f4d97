#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "racpp/model.hpp"

namespace racpp {

// Membership band for the critical set and for targets pinned at their penalty.
inline constexpr double kSeaLevelTolerance = 1e-9;

/// Mutable state of one greedy-plus-waterfilling run for a fixed attacked
/// target and a fixed villager count on it.
///
/// Invariants between iterations:
///   - villager_only_util[i] >= attacker_util[i] (rangers only lower utility);
///   - a target holding ranger effort and not pinned sits at the sea level;
///   - a target below the sea level wastes at most one villager.
struct WaterfillState {
  std::size_t attacked = 0;
  std::vector<double> attacker_util;       // U_a with rangers and villagers
  std::vector<double> villager_only_util;  // U_a with villagers only
  std::vector<double> effort;
  std::vector<std::int64_t> villagers;
  std::vector<double> width;  // 1 / (R_a - P_a), +inf for zero spread
  double sea_level = 0.0;
  std::optional<double> next_level;
  std::vector<std::size_t> critical;  // ascending target indices at the sea level
  double ranger_left = 0.0;
  std::int64_t villagers_left = 0;

  bool is_critical(std::size_t i) const;
  StrategyProfile profile() const { return {effort, villagers}; }
};

/// A swap sends one villager from `villager_from` to `effort_from` and hands
/// the latter's ranger effort to the former, leaving the sea level unchanged.
struct SwapCandidate {
  double drop = 0.0;  // sea-level drop until the swap becomes neutral
  std::size_t effort_from = 0;
  std::size_t villager_from = 0;
};

enum class WaterfillStage { kGreedy, kPour, kSwap };

using WaterfillObserver = std::function<void(const WaterfillState&, WaterfillStage)>;

struct WaterfillOutcome {
  StrategyProfile profile;
  std::uint64_t iterations = 0;
  std::uint64_t swaps = 0;
};

/// Sea-level drop from the level of critical target i until the ranger
/// coverage on i equals the part of j's last villager above the sea level.
/// Throws DomainError when the two spreads coincide or j has no villager.
double min_drop_before_swap(const Instance& instance, const WaterfillState& state, std::size_t i,
                            std::size_t j);

/// Cheapest admissible swap: i critical, j outside the critical set with a
/// villager and no effort, j strictly narrower than i, and the swap level not
/// below j's penalty. Neither side may be the attacked target.
std::optional<SwapCandidate> get_swap_line(const Instance& instance, const WaterfillState& state);

/// Optimal allocation of the remaining budget when `i_star` is attacked and
/// holds exactly `v_star` villagers and no pre-set effort. Requires
/// check_consistent(i_star, 0, v_star) to hold; throws DomainError otherwise.
WaterfillOutcome hw_subproblem(const Instance& instance, std::size_t i_star, std::int64_t v_star,
                               const WaterfillObserver& observer = {});

/// Exact solver: per candidate target, the largest consistent villager count
/// followed by the waterfilling subproblem.
SolveResult solve_hw(const Instance& instance, const SolveLimits& limits = {});

}  // namespace racpp
