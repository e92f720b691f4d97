#include "racpp/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <vector>

namespace racpp {

namespace {

// Guards floor(c / e_v) against quotients that land a few ulps under an integer.
constexpr double kFloorSlack = 1e-12;

void check_query(const Instance& instance, const FeasibilityQuery& q) {
  if (q.target >= instance.size()) throw DimensionError("query target out of range");
  if (!(q.effort >= 0.0) || q.effort > instance.ranger_budget + kBudgetTolerance) {
    throw DomainError("query ranger effort outside [0, ranger_budget]");
  }
  if (q.villagers < 0 || q.villagers > instance.villager_budget) {
    throw DomainError("query villager count outside [0, villager_budget]");
  }
}

// Attacker utility on the queried target, or nullopt when some other target's
// penalty already exceeds it.
std::optional<double> attacked_level(const Instance& instance, double coverage,
                                     std::size_t target) {
  const double u = attacker_utility(instance, target, std::min(coverage, 1.0));
  for (double pa : instance.penalty_att) {
    if (u < pa) return std::nullopt;
  }
  return u;
}

}  // namespace

std::optional<double> min_valid_coverage(const Instance& instance, std::size_t i, double u) {
  const double ra = instance.reward_att[i];
  const double pa = instance.penalty_att[i];
  if (ra == pa) {
    if (u >= 0.0) return 0.0;
    return std::nullopt;
  }
  if (u < pa) return std::nullopt;
  return std::clamp((ra - u) / (ra - pa), 0.0, 1.0);
}

double total_wasted_coverage(const Instance& instance, std::span<const std::int64_t> villagers,
                             double u, std::size_t i_star) {
  if (villagers.size() != instance.size()) throw DimensionError("villager vector length mismatch");
  double waste = 0.0;
  for (std::size_t i = 0; i < instance.size(); ++i) {
    if (i == i_star) continue;
    const auto cmin = min_valid_coverage(instance, i, u);
    if (!cmin) {
      throw DomainError("target " + std::to_string(i) + " cannot be pushed down to level " +
                        std::to_string(u));
    }
    waste += std::max(static_cast<double>(villagers[i]) * instance.villager_effectiveness - *cmin,
                      0.0);
  }
  return waste;
}

FeasibilityAnswer check_consistent(const Instance& instance, const FeasibilityQuery& q) {
  check_query(instance, q);
  const std::size_t n = instance.size();
  const double ep = instance.ranger_effectiveness;
  const double ev = instance.villager_effectiveness;

  const auto u = attacked_level(
      instance, ep * q.effort + ev * static_cast<double>(q.villagers), q.target);
  if (!u) return {};

  const double ranger_left = instance.ranger_budget - q.effort;
  std::int64_t villagers_left = instance.villager_budget - q.villagers;

  std::vector<double> residual(n, 0.0);
  std::vector<std::int64_t> placed(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == q.target) continue;
    const double cmin = *min_valid_coverage(instance, i, *u);
    const auto whole = static_cast<std::int64_t>(std::floor(cmin / ev + kFloorSlack));
    placed[i] = std::min(whole, villagers_left);
    villagers_left -= placed[i];
    residual[i] = std::max(cmin - static_cast<double>(placed[i]) * ev, 0.0);
  }

  // Each leftover villager closes the largest remaining gap; every gap is
  // below e_v here, so one villager covers it fully.
  if (villagers_left > 0) {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < n; ++i) {
      if (residual[i] > 0.0) open.push_back(i);
    }
    const auto take = static_cast<std::size_t>(
        std::min<std::int64_t>(villagers_left, static_cast<std::int64_t>(open.size())));
    const auto larger_gap = [&](std::size_t a, std::size_t b) {
      return residual[a] != residual[b] ? residual[a] > residual[b] : a < b;
    };
    std::partial_sort(open.begin(), open.begin() + static_cast<std::ptrdiff_t>(take), open.end(),
                      larger_gap);
    for (std::size_t k = 0; k < take; ++k) {
      residual[open[k]] = 0.0;
      ++placed[open[k]];
    }
  }

  const double need = std::accumulate(residual.begin(), residual.end(), 0.0);
  if (need > (ranger_left + kBudgetTolerance) * ep) return {};

  StrategyProfile witness = StrategyProfile::zeros(n);
  for (std::size_t i = 0; i < n; ++i) {
    witness.effort[i] = residual[i] / ep;
    witness.villagers[i] = placed[i];
  }
  witness.effort[q.target] = q.effort;
  witness.villagers[q.target] = q.villagers;
  return {true, std::move(witness)};
}

FeasibilityAnswer check_consistent_ts(const TargetSpecificInstance& instance,
                                      const FeasibilityQuery& q) {
  const Instance& base = instance.base;
  check_query(base, q);
  const std::size_t n = base.size();
  const Effectiveness eff(instance);

  const auto u = attacked_level(base,
                                eff.ranger(q.target) * q.effort +
                                    eff.villager(q.target) * static_cast<double>(q.villagers),
                                q.target);
  if (!u) return {};

  const double ranger_left = base.ranger_budget - q.effort;
  std::int64_t villagers_left = base.villager_budget - q.villagers;

  std::vector<double> remain(n, 0.0);
  std::vector<std::int64_t> placed(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i != q.target) remain[i] = *min_valid_coverage(base, i, *u);
  }

  // Ranger effort the next villager on target i would save; nonincreasing in
  // the number already placed there, so greedy placement is optimal.
  const auto saving = [&](std::size_t i) {
    return std::min(remain[i], eff.villager(i)) / eff.ranger(i);
  };
  using Entry = std::pair<double, std::size_t>;
  const auto worse = [](const Entry& a, const Entry& b) {
    return a.first != b.first ? a.first < b.first : a.second > b.second;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
  for (std::size_t i = 0; i < n; ++i) {
    if (remain[i] > 0.0) heap.emplace(saving(i), i);
  }
  while (villagers_left > 0 && !heap.empty()) {
    const std::size_t i = heap.top().second;
    heap.pop();
    remain[i] -= std::min(remain[i], eff.villager(i));
    ++placed[i];
    --villagers_left;
    if (remain[i] > 0.0) heap.emplace(saving(i), i);
  }

  double need = 0.0;
  for (std::size_t i = 0; i < n; ++i) need += remain[i] / eff.ranger(i);
  if (need > ranger_left + kBudgetTolerance) return {};

  StrategyProfile witness = StrategyProfile::zeros(n);
  for (std::size_t i = 0; i < n; ++i) {
    witness.effort[i] = remain[i] / eff.ranger(i);
    witness.villagers[i] = placed[i];
  }
  witness.effort[q.target] = q.effort;
  witness.villagers[q.target] = q.villagers;
  return {true, std::move(witness)};
}

}  // namespace racpp
