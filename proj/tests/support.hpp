#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "racpp/bench.hpp"
#include "racpp/model.hpp"

namespace racpp::testing {

// R_a = R_d = (1, 1), P_a = P_d = (-1, -1), e_p = e_v = 0.5, r_p = r_v = 1.
inline Instance symmetric_pair() {
  Instance g;
  g.ranger_budget = 1.0;
  g.villager_budget = 1;
  g.ranger_effectiveness = 0.5;
  g.villager_effectiveness = 0.5;
  g.reward_def = {1.0, 1.0};
  g.penalty_def = {-1.0, -1.0};
  g.reward_att = {1.0, 1.0};
  g.penalty_att = {-1.0, -1.0};
  return g;
}

struct Shape {
  std::size_t n;
  double ranger_budget;
  std::int64_t villager_budget;
  std::uint64_t seed;
};

// Shapes with n in 2..5 and both budgets in 0..3, cycling through every
// combination before repeating.
inline std::vector<Shape> small_shapes(std::size_t count, std::uint64_t seed_base) {
  std::vector<Shape> out;
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back({2 + k % 4, static_cast<double>((k / 4) % 4),
                   static_cast<std::int64_t>((k / 16) % 4), seed_base + k});
  }
  return out;
}

inline Instance make(const Shape& s) {
  GenParams p;
  p.n = s.n;
  p.ranger_budget = s.ranger_budget;
  p.villager_budget = s.villager_budget;
  p.seed = s.seed;
  return generate_instance(p);
}

inline std::vector<Instance> small_instances(std::size_t count, std::uint64_t seed_base) {
  std::vector<Instance> out;
  for (const Shape& s : small_shapes(count, seed_base)) out.push_back(make(s));
  return out;
}

// Defender utility written out directly from the game definition, sharing no
// code with the library's evaluator.
inline double plain_defender_utility(const Instance& g, const StrategyProfile& x) {
  double best_att = 0.0, best_def = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double c = g.ranger_effectiveness * x.effort[i] +
               g.villager_effectiveness * static_cast<double>(x.villagers[i]);
    if (c > 1.0) c = 1.0;
    const double att = g.reward_att[i] - c * (g.reward_att[i] - g.penalty_att[i]);
    const double def = g.penalty_def[i] + c * (g.reward_def[i] - g.penalty_def[i]);
    const bool higher = i == 0 || att > best_att + 1e-9;
    const bool tie_better = std::abs(att - best_att) <= 1e-9 && def > best_def + 1e-9;
    if (higher || tie_better) {
      best_att = att;
      best_def = def;
    }
  }
  return best_def;
}

// Visits every villager vector with n entries summing to at most `budget`.
inline void each_placement(std::size_t n, std::int64_t budget,
                           const std::function<void(const std::vector<std::int64_t>&)>& f) {
  std::vector<std::int64_t> v(n, 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
    if (i == n) {
      f(v);
      return;
    }
    for (std::int64_t k = 0; k <= left; ++k) {
      v[i] = k;
      rec(i + 1, left - k);
    }
    v[i] = 0;
  };
  rec(0, budget);
}

// Attacker utility on every target for a profile, straight from the formulas.
inline std::vector<double> plain_attacker_utilities(const Instance& g, const StrategyProfile& x) {
  std::vector<double> u;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double c = std::min(g.ranger_effectiveness * x.effort[i] +
                                  g.villager_effectiveness * static_cast<double>(x.villagers[i]),
                              1.0);
    u.push_back(g.reward_att[i] * (1.0 - c) + g.penalty_att[i] * c);
  }
  return u;
}

// Least ranger effort that makes `target` a best response once it holds
// (effort, villagers), minimised over every placement of the spare villagers
// on the other targets. Infinity when some target's penalty is above the level.
template <typename EffP, typename EffV>
double brute_force_need(const Instance& g, EffP ep, EffV ev, std::size_t target, double effort,
                        std::int64_t villagers) {
  const double c_star =
      std::min(ep(target) * effort + ev(target) * static_cast<double>(villagers), 1.0);
  const double u = g.reward_att[target] * (1.0 - c_star) + g.penalty_att[target] * c_star;
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (u < g.penalty_att[j]) return std::numeric_limits<double>::infinity();
  }
  double best = std::numeric_limits<double>::infinity();
  each_placement(g.size(), g.villager_budget - villagers, [&](const std::vector<std::int64_t>& v) {
    if (v[target] != 0) return;
    double need = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (j == target) continue;
      const double spread = g.reward_att[j] - g.penalty_att[j];
      const double cmin = spread == 0.0 ? 0.0 : std::clamp((g.reward_att[j] - u) / spread, 0.0, 1.0);
      need += std::max(cmin - ev(j) * static_cast<double>(v[j]), 0.0) / ep(j);
    }
    best = std::min(best, need);
  });
  return best;
}

}  // namespace racpp::testing
