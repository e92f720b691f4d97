#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "racpp/common.hpp"

namespace racpp {

/// A community-participated patrol game: n targets defended by divisible ranger
/// effort and indivisible villagers against one best-responding attacker.
///
/// Payoff vectors are indexed by target. A target that is defended when
/// attacked pays reward_def to the defender and penalty_att to the attacker;
/// an undefended one pays penalty_def and reward_att.
struct Instance {
  double ranger_budget = 0.0;
  std::int64_t villager_budget = 0;
  double ranger_effectiveness = 1.0;
  double villager_effectiveness = 1.0;
  std::vector<double> reward_def;
  std::vector<double> penalty_def;
  std::vector<double> reward_att;
  std::vector<double> penalty_att;

  std::size_t size() const noexcept { return reward_att.size(); }
};

/// Instance whose effectiveness values vary per target (terrain, vegetation).
/// `villager_eff` always has length n; `ranger_eff` is either empty (use the
/// base scalar everywhere) or length n.
struct TargetSpecificInstance {
  Instance base;
  std::vector<double> ranger_eff;
  std::vector<double> villager_eff;

  std::size_t size() const noexcept { return base.size(); }
};

/// Throws InvalidInstance if the game breaks a structural or sign invariant.
void check_instance(const Instance& instance);
void check_instance(const TargetSpecificInstance& instance);

/// Lifts a scalar instance to the per-target representation.
TargetSpecificInstance make_target_specific(const Instance& instance);

/// Per-target effectiveness lookup over either instance flavour. Holds spans
/// into the instance, which must outlive it.
class Effectiveness {
 public:
  explicit Effectiveness(const Instance& instance);
  explicit Effectiveness(const TargetSpecificInstance& instance);

  double ranger(std::size_t i) const noexcept { return ranger_[ranger_.size() == 1 ? 0 : i]; }
  double villager(std::size_t i) const noexcept {
    return villager_[villager_.size() == 1 ? 0 : i];
  }

 private:
  std::span<const double> ranger_;
  std::span<const double> villager_;
};

struct StrategyProfile {
  std::vector<double> effort;           // ranger effort per target
  std::vector<std::int64_t> villagers;  // villager count per target

  static StrategyProfile zeros(std::size_t n) {
    return {std::vector<double>(n, 0.0), std::vector<std::int64_t>(n, 0)};
  }
  double total_effort() const;
  std::int64_t total_villagers() const;

  bool operator==(const StrategyProfile&) const = default;
};

struct TargetUtilities {
  double defender = 0.0;
  double attacker = 0.0;
};

struct BestResponse {
  std::size_t target = 0;
  double attacker_utility = 0.0;
  double defender_utility = 0.0;
};

struct SolveResult {
  StrategyProfile profile;
  std::size_t attacked = 0;
  double defender_utility = 0.0;
  double attacker_utility = 0.0;
  std::map<std::string, std::uint64_t> diagnostics;
};

/// c[i] = min(e_p * p[i] + e_v * v[i], 1).
std::vector<double> compute_coverage(const Instance& instance, const StrategyProfile& profile);
std::vector<double> compute_coverage(const TargetSpecificInstance& instance,
                                     const StrategyProfile& profile);

/// Expected utilities when target i is attacked under coverage c.
TargetUtilities target_utilities(const Instance& instance, double coverage, std::size_t i);

/// Attacker utility on target i at the given coverage. Unchecked hot-path helper.
inline double attacker_utility(const Instance& instance, std::size_t i, double coverage) {
  return instance.reward_att[i] * (1.0 - coverage) + instance.penalty_att[i] * coverage;
}

/// Attacker's best response: maximal U_a, ties (within kUtilityTieTolerance)
/// broken toward the larger defender utility, then toward the lowest index.
BestResponse best_response(const Instance& instance, std::span<const double> coverage);

/// Empty when the profile is valid; otherwise one message per violated constraint.
std::vector<std::string> validate_profile(const Instance& instance, const StrategyProfile& profile);

/// Full evaluation of a defender profile. Throws ValidationError for invalid profiles.
SolveResult evaluate_profile(const Instance& instance, const StrategyProfile& profile);
SolveResult evaluate_profile(const TargetSpecificInstance& instance,
                             const StrategyProfile& profile);

/// Largest absolute input value, floored at 1.
double value_bound(const Instance& instance);

}  // namespace racpp
