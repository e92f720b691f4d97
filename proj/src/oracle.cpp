#include "racpp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace racpp {

namespace {

constexpr double kEffortResolution = 1e-12;

// Ranger step for a fixed villager coverage vector. Deliberately independent
// of the feasibility module so the two can check each other.
class RangerStep {
 public:
  RangerStep(const Instance& instance, std::vector<double> ranger_eff)
      : g_(instance), ep_(std::move(ranger_eff)) {}

  // Largest effort vector that keeps `target` a best response, or nullopt.
  std::optional<std::vector<double>> allocate(const std::vector<double>& villager_cov,
                                              std::size_t target) const {
    if (!fits(villager_cov, target, 0.0)) return std::nullopt;
    const double saturating = std::max(0.0, 1.0 - villager_cov[target]) / ep_[target];
    double lo = 0.0;
    double hi = std::min(g_.ranger_budget, saturating);
    if (fits(villager_cov, target, hi)) {
      lo = hi;
    } else {
      while (hi - lo > kEffortResolution) {
        const double mid = 0.5 * (lo + hi);
        (fits(villager_cov, target, mid) ? lo : hi) = mid;
      }
    }
    std::vector<double> effort(g_.size(), 0.0);
    const double u = level(villager_cov, target, lo);
    for (std::size_t j = 0; j < g_.size(); ++j) {
      if (j != target) effort[j] = residual(villager_cov, j, u) / ep_[j];
    }
    effort[target] = lo;
    return effort;
  }

 private:
  double level(const std::vector<double>& cov, std::size_t t, double p) const {
    const double c = std::min(cov[t] + ep_[t] * p, 1.0);
    return g_.reward_att[t] * (1.0 - c) + g_.penalty_att[t] * c;
  }

  double residual(const std::vector<double>& cov, std::size_t j, double u) const {
    const double spread = g_.reward_att[j] - g_.penalty_att[j];
    if (spread == 0.0) return 0.0;
    const double need = std::clamp((g_.reward_att[j] - u) / spread, 0.0, 1.0);
    return std::max(need - std::min(cov[j], 1.0), 0.0);
  }

  bool fits(const std::vector<double>& cov, std::size_t t, double p) const {
    const double u = level(cov, t, p);
    double spent = p;
    for (std::size_t j = 0; j < g_.size(); ++j) {
      if (j == t) continue;
      if (u < g_.penalty_att[j]) return false;
      spent += residual(cov, j, u) / ep_[j];
    }
    return spent <= g_.ranger_budget;
  }

  const Instance& g_;
  std::vector<double> ep_;
};

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

void refuse(std::uint64_t count, std::uint64_t cap, const char* what) {
  if (count > cap) {
    throw EnumerationCapExceeded(std::string(what) + ": " + std::to_string(count) +
                                 " cases exceed the enumeration cap of " + std::to_string(cap));
  }
}

// Visits every vector of n nonnegative counts summing to at most `budget`.
template <typename Visit>
void for_each_placement(std::size_t n, std::int64_t budget, Visit&& visit) {
  std::vector<std::int64_t> v(n, 0);
  std::int64_t used = 0;
  while (true) {
    visit(v);
    std::size_t k = 0;
    while (k < n && used == budget) {
      used -= v[k];
      v[k] = 0;
      ++k;
      if (k == n) return;
    }
    if (k == n) return;
    // Odometer step: bump the first position that can grow, reset those before it.
    ++v[k];
    ++used;
  }
}

template <typename Game>
SolveResult solve_placements(const Game& game, const Instance& base, const Effectiveness& eff,
                             std::uint64_t cap) {
  const std::size_t n = base.size();
  refuse(placement_count(n, base.villager_budget), cap, "villager placements");

  std::vector<double> ranger_eff(n);
  for (std::size_t i = 0; i < n; ++i) ranger_eff[i] = eff.ranger(i);
  const RangerStep step(base, std::move(ranger_eff));

  std::optional<SolveResult> best;
  std::uint64_t placements = 0;
  std::vector<double> cov(n);
  for_each_placement(n, base.villager_budget, [&](const std::vector<std::int64_t>& v) {
    ++placements;
    for (std::size_t i = 0; i < n; ++i) cov[i] = eff.villager(i) * static_cast<double>(v[i]);
    for (std::size_t t = 0; t < n; ++t) {
      auto effort = step.allocate(cov, t);
      if (!effort) continue;
      SolveResult candidate = evaluate_profile(game, StrategyProfile{std::move(*effort), v});
      if (!best || candidate.defender_utility > best->defender_utility) {
        best = std::move(candidate);
      }
    }
  });
  if (!best) throw DomainError("no target can be made the attacker's best response");
  best->diagnostics["placements"] = placements;
  return std::move(*best);
}

}  // namespace

std::uint64_t placement_count(std::size_t n, std::int64_t villagers) {
  // C(n + r, r) built incrementally; each partial product is itself a binomial.
  std::uint64_t count = 1;
  for (std::int64_t k = 1; k <= villagers; ++k) {
    const std::uint64_t next = saturating_mul(count, n + static_cast<std::uint64_t>(k));
    if (next == std::numeric_limits<std::uint64_t>::max()) return next;
    count = next / static_cast<std::uint64_t>(k);
  }
  return count;
}

SolveResult solve_oracle(const Instance& instance, std::uint64_t cap) {
  check_instance(instance);
  return solve_placements(instance, instance, Effectiveness(instance), cap);
}

SolveResult solve_oracle(const TargetSpecificInstance& instance, std::uint64_t cap) {
  check_instance(instance);
  return solve_placements(instance, instance.base, Effectiveness(instance), cap);
}

VillagerSpecificResult solve_oracle_villager_specific(const VillagerSpecificInstance& instance,
                                                      std::uint64_t cap) {
  const Instance& base = instance.base;
  check_instance(base);
  if (instance.villager_eff.size() != static_cast<std::size_t>(base.villager_budget)) {
    throw DimensionError("villager effectiveness vector must have one entry per villager");
  }
  for (double e : instance.villager_eff) {
    if (!(e > 0.0 && e <= 1.0)) throw InvalidInstance("villager effectiveness outside (0, 1]");
  }
  const std::size_t n = base.size();
  const std::size_t r = instance.villager_eff.size();
  std::uint64_t count = 1;
  for (std::size_t k = 0; k < r; ++k) count = saturating_mul(count, n);
  refuse(count, cap, "villager assignments");

  const RangerStep step(base, std::vector<double>(n, base.ranger_effectiveness));
  std::optional<VillagerSpecificResult> best;
  std::vector<std::size_t> assign(r, 0);
  std::vector<double> cov(n);
  for (std::uint64_t a = 0; a < count; ++a) {
    std::fill(cov.begin(), cov.end(), 0.0);
    std::vector<std::int64_t> counts(n, 0);
    for (std::size_t k = 0; k < r; ++k) {
      cov[assign[k]] += instance.villager_eff[k];
      ++counts[assign[k]];
    }
    for (std::size_t t = 0; t < n; ++t) {
      auto effort = step.allocate(cov, t);
      if (!effort) continue;
      std::vector<double> c(n);
      for (std::size_t i = 0; i < n; ++i) {
        c[i] = std::min(base.ranger_effectiveness * (*effort)[i] + cov[i], 1.0);
      }
      const BestResponse br = best_response(base, c);
      if (best && !(br.defender_utility > best->result.defender_utility)) continue;
      SolveResult res;
      res.profile = {std::move(*effort), counts};
      res.attacked = br.target;
      res.defender_utility = br.defender_utility;
      res.attacker_utility = br.attacker_utility;
      best = VillagerSpecificResult{std::move(res), assign};
    }
    for (std::size_t k = 0; k < r && ++assign[k] == n; ++k) assign[k] = 0;
  }
  if (!best) throw DomainError("no target can be made the attacker's best response");
  best->result.diagnostics["assignments"] = count;
  return std::move(*best);
}

}  // namespace racpp
