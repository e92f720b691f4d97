#include "racpp/tdbs.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "racpp/feasibility.hpp"

namespace racpp {

namespace {

void check_config(const Instance& instance, const TdbsConfig& config) {
  if (!(config.epsilon > 0.0) || !std::isfinite(config.epsilon)) {
    throw InvalidInstance("TDBS epsilon must be positive");
  }
  if (!(config.value_bound >= value_bound(instance))) {
    throw InvalidInstance("TDBS value bound is smaller than the instance's largest input");
  }
}

template <typename Game, typename Check>
SolveResult search(const Game& game, const Instance& base, const Effectiveness& eff,
                   const TdbsConfig& config, const SolveLimits& limits,
                   std::vector<FeasibilityProbe>* probes, bool scan_villagers, Check&& check) {
  std::uint64_t calls = 0;
  std::uint64_t considered = 0;
  const auto probe = [&](std::size_t target, double effort, std::int64_t villagers) {
    ++calls;
    FeasibilityAnswer answer = check(game, FeasibilityQuery{target, effort, villagers});
    if (probes) probes->push_back({target, effort, villagers, answer.feasible});
    return answer;
  };

  std::optional<SolveResult> best;
  for (std::size_t target = 0; target < base.size(); ++target) {
    limits.check();
    FeasibilityAnswer start = probe(target, 0.0, 0);
    if (!start.feasible) continue;
    ++considered;
    StrategyProfile witness = std::move(*start.witness);

    std::int64_t villagers = 0;
    std::int64_t lo = 0, hi = base.villager_budget;
    while (lo <= hi) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (FeasibilityAnswer a = probe(target, 0.0, mid); a.feasible) {
        villagers = mid;
        witness = std::move(*a.witness);
        lo = mid + 1;
      } else {
        hi = mid - 1;
      }
    }

    // Per-target villager effectiveness breaks the exchange argument behind
    // taking the largest count, so every consistent count is tried there.
    const std::int64_t v_first = scan_villagers ? 0 : villagers;
    for (std::int64_t v = v_first; v <= villagers; ++v) {
      limits.check();
      StrategyProfile current = witness;
      if (v != villagers) {
        FeasibilityAnswer a = probe(target, 0.0, v);
        if (!a.feasible) continue;
        current = std::move(*a.witness);
      }
      // Effort beyond full coverage buys nothing on this target.
      const double saturating =
          std::max(0.0, 1.0 - eff.villager(target) * static_cast<double>(v)) / eff.ranger(target);
      double p_lo = 0.0;
      double p_hi = std::min(base.ranger_budget, saturating);
      if (p_hi > 0.0) {
        if (FeasibilityAnswer a = probe(target, p_hi, v); a.feasible) {
          current = std::move(*a.witness);
          p_lo = p_hi;
        }
      }
      while (p_hi - p_lo > config.epsilon) {
        const double mid = 0.5 * (p_lo + p_hi);
        if (FeasibilityAnswer a = probe(target, mid, v); a.feasible) {
          p_lo = mid;
          current = std::move(*a.witness);
        } else {
          p_hi = mid;
        }
      }
      SolveResult candidate = evaluate_profile(game, current);
      if (!best || candidate.defender_utility > best->defender_utility) best = std::move(candidate);
    }
  }

  if (!best) {
    // Unreachable for valid instances: the target with the largest attacker
    // reward is always consistent with an empty allocation.
    throw DomainError("no target can be made the attacker's best response");
  }
  best->diagnostics["feasibility_checks"] = calls;
  best->diagnostics["targets_considered"] = considered;
  return std::move(*best);
}

}  // namespace

TdbsConfig make_tdbs_config(const Instance& instance, double epsilon) {
  return {epsilon, value_bound(instance)};
}

SolveResult solve_tdbs(const Instance& instance, const TdbsConfig& config,
                       const SolveLimits& limits, std::vector<FeasibilityProbe>* probes) {
  check_instance(instance);
  check_config(instance, config);
  return search(instance, instance, Effectiveness(instance), config, limits, probes, false,
                [](const Instance& g, const FeasibilityQuery& q) { return check_consistent(g, q); });
}

SolveResult solve_tdbs(const TargetSpecificInstance& instance, const TdbsConfig& config,
                       const SolveLimits& limits, std::vector<FeasibilityProbe>* probes) {
  check_instance(instance);
  check_config(instance.base, config);
  return search(instance, instance.base, Effectiveness(instance), config, limits, probes, true,
                [](const TargetSpecificInstance& g, const FeasibilityQuery& q) {
                  return check_consistent_ts(g, q);
                });
}

}  // namespace racpp
