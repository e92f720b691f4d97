#include "racpp/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "racpp/feasibility.hpp"

namespace racpp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Effort at or below this counts as "no rangers" when filtering swap partners.
constexpr double kNoEffort = 1e-12;

double spread(const Instance& instance, std::size_t i) {
  return instance.reward_att[i] - instance.penalty_att[i];
}

double villager_coverage(const Instance& instance, std::int64_t villagers) {
  return std::min(instance.villager_effectiveness * static_cast<double>(villagers), 1.0);
}

class Waterfill {
 public:
  Waterfill(const Instance& instance, std::size_t i_star, std::int64_t v_star,
            const WaterfillObserver& observer)
      : inst_(instance), observer_(observer) {
    const std::size_t n = instance.size();
    s_.attacked = i_star;
    s_.effort.assign(n, 0.0);
    s_.villagers.assign(n, 0);
    s_.width.resize(n);
    s_.attacker_util = instance.reward_att;
    for (std::size_t i = 0; i < n; ++i) {
      const double sp = spread(instance, i);
      s_.width[i] = sp > 0.0 ? 1.0 / sp : kInf;
    }
    s_.villagers[i_star] = v_star;
    s_.attacker_util[i_star] = attacker_utility(instance, i_star, villager_coverage(instance, v_star));
    s_.ranger_left = instance.ranger_budget;
    s_.villagers_left = instance.villager_budget - v_star;
  }

  WaterfillOutcome run() {
    place_villagers();
    s_.villager_only_util = s_.attacker_util;
    notify(WaterfillStage::kGreedy);

    const std::size_t n = inst_.size();
    const std::uint64_t cap = 16 * static_cast<std::uint64_t>(n + 2) *
                              static_cast<std::uint64_t>(n + 2 + inst_.villager_budget);
    while (s_.ranger_left > 0.0 && step()) {
      if (++iterations_ > cap) throw std::logic_error("waterfilling failed to terminate");
    }
    return {s_.profile(), iterations_, swaps_};
  }

 private:
  bool pinned(std::size_t i) const {
    return s_.attacker_util[i] <= inst_.penalty_att[i] + kSeaLevelTolerance;
  }

  void notify(WaterfillStage stage) const {
    if (observer_) observer_(s_, stage);
  }

  // Each spare villager goes to the unpinned target with the highest attacker utility.
  void place_villagers() {
    const std::size_t n = inst_.size();
    while (s_.villagers_left > 0) {
      std::size_t pick = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == s_.attacked || pinned(i)) continue;
        if (pick == n || s_.attacker_util[i] > s_.attacker_util[pick]) pick = i;
      }
      if (pick == n) break;
      ++s_.villagers[pick];
      --s_.villagers_left;
      s_.attacker_util[pick] =
          attacker_utility(inst_, pick, villager_coverage(inst_, s_.villagers[pick]));
    }
  }

  // One pour of ranger effort into the critical set, followed by a swap when
  // the pour ended exactly at a critical point. Returns false when done.
  bool step() {
    const std::size_t n = inst_.size();
    const std::size_t star = s_.attacked;

    double level = -kInf;
    for (std::size_t i = 0; i < n; ++i) {
      if (!pinned(i)) level = std::max(level, s_.attacker_util[i]);
    }
    if (level == -kInf) return false;
    const bool star_pinned = pinned(star);
    if (star_pinned && level <= s_.attacker_util[star] + kSeaLevelTolerance) return false;

    s_.critical.clear();
    std::optional<double> next;
    for (std::size_t i = 0; i < n; ++i) {
      if (pinned(i)) continue;
      if (s_.attacker_util[i] >= level - kSeaLevelTolerance) {
        s_.critical.push_back(i);
      } else if (!next || s_.attacker_util[i] > *next) {
        next = s_.attacker_util[i];
      }
    }
    // A pinned attacked target is a floor the others only need to reach.
    if (star_pinned && (!next || s_.attacker_util[star] > *next)) next = s_.attacker_util[star];

    const bool star_critical = s_.is_critical(star);
    double penalty_floor = -kInf;
    if (star_critical) {
      penalty_floor = *std::max_element(inst_.penalty_att.begin(), inst_.penalty_att.end());
      // The attacked target cannot drop below another target's penalty.
      if (level <= penalty_floor + kSeaLevelTolerance) return false;
    } else {
      for (std::size_t i : s_.critical) penalty_floor = std::max(penalty_floor, inst_.penalty_att[i]);
    }

    s_.sea_level = level;
    s_.next_level = next;

    const std::optional<SwapCandidate> swap = get_swap_line(inst_, s_);
    double drop = swap ? swap->drop : kInf;
    bool do_swap = swap.has_value();
    if (level - drop < penalty_floor) {
      drop = level - penalty_floor;
      do_swap = false;
    }
    if (next && level - drop < *next) {
      drop = level - *next;
      do_swap = false;
    }

    double total_width = 0.0;
    for (std::size_t i : s_.critical) total_width += s_.width[i];
    const double ep = inst_.ranger_effectiveness;
    const double needed = total_width * drop / ep;
    if (needed > s_.ranger_left) {
      drop = s_.ranger_left * ep / total_width;
      s_.ranger_left = 0.0;
      do_swap = false;
    } else {
      s_.ranger_left -= needed;
    }

    for (std::size_t i : s_.critical) {
      s_.attacker_util[i] -= drop;
      s_.effort[i] += drop * s_.width[i] / ep;
      if (s_.attacker_util[i] < inst_.penalty_att[i]) s_.attacker_util[i] = inst_.penalty_att[i];
    }
    s_.sea_level = level - drop;
    notify(WaterfillStage::kPour);

    if (do_swap) {
      execute_swap(*swap);
      notify(WaterfillStage::kSwap);
    }
    return true;
  }

  // At the critical point the effort on `effort_from` exactly covers the part
  // of the moved villager's coverage that `villager_from` still needs. Both
  // efforts are recomputed from the level so rounding never leaks budget.
  void execute_swap(const SwapCandidate& swap) {
    const double level = s_.sea_level;
    const double ep = inst_.ranger_effectiveness;
    const std::size_t to = swap.effort_from;
    const std::size_t from = swap.villager_from;
    const double before = s_.effort[to] + s_.effort[from];

    --s_.villagers[from];
    ++s_.villagers[to];
    for (std::size_t i : {to, from}) {
      const double cover_v = villager_coverage(inst_, s_.villagers[i]);
      const double cmin = min_valid_coverage(inst_, i, level).value_or(1.0);
      s_.effort[i] = std::max(cmin - cover_v, 0.0) / ep;
      s_.villager_only_util[i] = attacker_utility(inst_, i, cover_v);
      s_.attacker_util[i] = s_.effort[i] > 0.0 ? level : s_.villager_only_util[i];
    }
    s_.ranger_left += before - (s_.effort[to] + s_.effort[from]);
    ++swaps_;
  }

  const Instance& inst_;
  const WaterfillObserver& observer_;
  WaterfillState s_;
  std::uint64_t iterations_ = 0;
  std::uint64_t swaps_ = 0;
};

}  // namespace

bool WaterfillState::is_critical(std::size_t i) const {
  return std::binary_search(critical.begin(), critical.end(), i);
}

double min_drop_before_swap(const Instance& instance, const WaterfillState& state, std::size_t i,
                            std::size_t j) {
  const double si = spread(instance, i);
  const double sj = spread(instance, j);
  if (si == sj) throw DomainError("equal spreads never reach a critical point");
  if (state.villagers[j] < 1) throw DomainError("target without villagers cannot give one up");
  const double last_villager_top =
      instance.reward_att[j] -
      sj * instance.villager_effectiveness * static_cast<double>(state.villagers[j] - 1);
  const double base = state.villager_only_util[i];
  return state.attacker_util[i] - base + (last_villager_top - base) * si / (sj - si);
}

std::optional<SwapCandidate> get_swap_line(const Instance& instance, const WaterfillState& state) {
  const std::size_t n = instance.size();
  std::vector<std::size_t> donors;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == state.attacked || state.is_critical(j)) continue;
    if (state.effort[j] > kNoEffort || state.villagers[j] <= 0) continue;
    donors.push_back(j);
  }
  std::optional<SwapCandidate> best;
  for (std::size_t i : state.critical) {
    if (i == state.attacked) continue;
    for (std::size_t j : donors) {
      if (!(state.width[j] < state.width[i])) continue;
      const double drop = std::max(0.0, min_drop_before_swap(instance, state, i, j));
      if (state.sea_level - drop < instance.penalty_att[j] - kSeaLevelTolerance) continue;
      if (!best || drop < best->drop) best = SwapCandidate{drop, i, j};
    }
  }
  return best;
}

WaterfillOutcome hw_subproblem(const Instance& instance, std::size_t i_star, std::int64_t v_star,
                               const WaterfillObserver& observer) {
  if (i_star >= instance.size()) throw DimensionError("attacked target out of range");
  if (!check_consistent(instance, {i_star, 0.0, v_star}).feasible) {
    throw DomainError("target " + std::to_string(i_star) + " with " + std::to_string(v_star) +
                      " villagers cannot be a best response");
  }
  return Waterfill(instance, i_star, v_star, observer).run();
}

SolveResult solve_hw(const Instance& instance, const SolveLimits& limits) {
  check_instance(instance);
  std::uint64_t checks = 0, iterations = 0, swaps = 0, max_swaps = 0;
  const auto consistent = [&](std::size_t target, std::int64_t villagers) {
    ++checks;
    return check_consistent(instance, {target, 0.0, villagers}).feasible;
  };

  std::optional<SolveResult> best;
  for (std::size_t target = 0; target < instance.size(); ++target) {
    limits.check();
    if (!consistent(target, 0)) continue;
    std::int64_t villagers = 0;
    std::int64_t lo = 1, hi = instance.villager_budget;
    while (lo <= hi) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (consistent(target, mid)) {
        villagers = mid;
        lo = mid + 1;
      } else {
        hi = mid - 1;
      }
    }
    WaterfillOutcome outcome = Waterfill(instance, target, villagers, {}).run();
    iterations += outcome.iterations;
    swaps += outcome.swaps;
    max_swaps = std::max(max_swaps, outcome.swaps);
    SolveResult candidate = evaluate_profile(instance, outcome.profile);
    if (!best || candidate.defender_utility > best->defender_utility) best = std::move(candidate);
  }
  if (!best) throw DomainError("no target can be made the attacker's best response");
  best->diagnostics["feasibility_checks"] = checks;
  best->diagnostics["iterations"] = iterations;
  best->diagnostics["swaps"] = swaps;
  best->diagnostics["max_swaps_per_target"] = max_swaps;
  return std::move(*best);
}

}  // namespace racpp
