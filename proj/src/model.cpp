#include "racpp/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace racpp {

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::ostringstream out;
  for (std::size_t k = 0; k < parts.size(); ++k) out << (k ? "; " : "") << parts[k];
  return out.str();
}

bool in_unit_interval(double e) { return std::isfinite(e) && e > 0.0 && e <= 1.0; }

template <typename Eff>
std::vector<double> coverage_with(const Instance& instance, const Eff& eff,
                                  const StrategyProfile& profile) {
  const std::size_t n = instance.size();
  if (profile.effort.size() != n || profile.villagers.size() != n) {
    throw DimensionError("profile has " + std::to_string(profile.effort.size()) + "/" +
                         std::to_string(profile.villagers.size()) +
                         " entries, instance has " + std::to_string(n) + " targets");
  }
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double raw = eff.ranger(i) * profile.effort[i] +
                       eff.villager(i) * static_cast<double>(profile.villagers[i]);
    c[i] = std::min(raw, 1.0);
  }
  return c;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error("invalid strategy profile: " + join(violations)),
      violations_(std::move(violations)) {}

void check_instance(const Instance& instance) {
  const std::size_t n = instance.size();
  if (n == 0) throw InvalidInstance("instance has no targets");
  const auto check_len = [n](const std::vector<double>& v, const char* name) {
    if (v.size() != n) {
      throw InvalidInstance(std::string(name) + " has length " + std::to_string(v.size()) +
                            ", expected " + std::to_string(n));
    }
  };
  check_len(instance.reward_def, "reward_defender");
  check_len(instance.penalty_def, "penalty_defender");
  check_len(instance.penalty_att, "penalty_attacker");

  if (!std::isfinite(instance.ranger_budget) || instance.ranger_budget < 0.0) {
    throw InvalidInstance("ranger_budget must be a nonnegative real");
  }
  if (instance.villager_budget < 0) throw InvalidInstance("villager_budget must be nonnegative");
  if (!in_unit_interval(instance.ranger_effectiveness)) {
    throw InvalidInstance("e_p must lie in (0, 1]");
  }
  if (!in_unit_interval(instance.villager_effectiveness)) {
    throw InvalidInstance("e_v must lie in (0, 1]");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double rd = instance.reward_def[i], pd = instance.penalty_def[i];
    const double ra = instance.reward_att[i], pa = instance.penalty_att[i];
    if (!std::isfinite(rd) || !std::isfinite(pd) || !std::isfinite(ra) || !std::isfinite(pa)) {
      throw InvalidInstance("payoff of target " + std::to_string(i) + " is not finite");
    }
    if (rd < 0.0 || pd > 0.0) {
      throw InvalidInstance("target " + std::to_string(i) +
                            " violates reward_defender >= 0 >= penalty_defender");
    }
    if (ra < 0.0 || pa > 0.0) {
      throw InvalidInstance("target " + std::to_string(i) +
                            " violates reward_attacker >= 0 >= penalty_attacker");
    }
  }
}

void check_instance(const TargetSpecificInstance& instance) {
  check_instance(instance.base);
  const std::size_t n = instance.size();
  if (instance.villager_eff.size() != n) {
    throw InvalidInstance("per-target e_v has length " +
                          std::to_string(instance.villager_eff.size()) + ", expected " +
                          std::to_string(n));
  }
  if (!instance.ranger_eff.empty() && instance.ranger_eff.size() != n) {
    throw InvalidInstance("per-target e_p has length " +
                          std::to_string(instance.ranger_eff.size()) + ", expected " +
                          std::to_string(n));
  }
  for (double e : instance.villager_eff) {
    if (!in_unit_interval(e)) throw InvalidInstance("per-target e_v must lie in (0, 1]");
  }
  for (double e : instance.ranger_eff) {
    if (!in_unit_interval(e)) throw InvalidInstance("per-target e_p must lie in (0, 1]");
  }
}

TargetSpecificInstance make_target_specific(const Instance& instance) {
  return {instance, std::vector<double>(instance.size(), instance.ranger_effectiveness),
          std::vector<double>(instance.size(), instance.villager_effectiveness)};
}

Effectiveness::Effectiveness(const Instance& instance)
    : ranger_(&instance.ranger_effectiveness, 1), villager_(&instance.villager_effectiveness, 1) {}

Effectiveness::Effectiveness(const TargetSpecificInstance& instance)
    : ranger_(instance.ranger_eff.empty()
                  ? std::span<const double>(&instance.base.ranger_effectiveness, 1)
                  : std::span<const double>(instance.ranger_eff)),
      villager_(instance.villager_eff) {}

double StrategyProfile::total_effort() const {
  return std::accumulate(effort.begin(), effort.end(), 0.0);
}

std::int64_t StrategyProfile::total_villagers() const {
  return std::accumulate(villagers.begin(), villagers.end(), std::int64_t{0});
}

std::vector<double> compute_coverage(const Instance& instance, const StrategyProfile& profile) {
  return coverage_with(instance, Effectiveness(instance), profile);
}

std::vector<double> compute_coverage(const TargetSpecificInstance& instance,
                                     const StrategyProfile& profile) {
  return coverage_with(instance.base, Effectiveness(instance), profile);
}

TargetUtilities target_utilities(const Instance& instance, double coverage, std::size_t i) {
  if (i >= instance.size()) throw DimensionError("target index out of range");
  if (!(coverage >= 0.0 && coverage <= 1.0)) {
    throw DomainError("coverage " + std::to_string(coverage) + " outside [0, 1]");
  }
  return {instance.reward_def[i] * coverage + instance.penalty_def[i] * (1.0 - coverage),
          attacker_utility(instance, i, coverage)};
}

BestResponse best_response(const Instance& instance, std::span<const double> coverage) {
  const std::size_t n = instance.size();
  if (coverage.size() != n) throw DimensionError("coverage vector length mismatch");
  std::vector<TargetUtilities> u(n);
  double max_att = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = target_utilities(instance, coverage[i], i);
    max_att = std::max(max_att, u[i].attacker);
  }
  double max_def = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i].attacker >= max_att - kUtilityTieTolerance) max_def = std::max(max_def, u[i].defender);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i].attacker >= max_att - kUtilityTieTolerance &&
        u[i].defender >= max_def - kUtilityTieTolerance) {
      return {i, u[i].attacker, u[i].defender};
    }
  }
  return {};  // unreachable for n > 0
}

std::vector<std::string> validate_profile(const Instance& instance,
                                          const StrategyProfile& profile) {
  std::vector<std::string> out;
  const std::size_t n = instance.size();
  if (profile.effort.size() != n) {
    out.push_back("ranger effort vector has length " + std::to_string(profile.effort.size()) +
                  ", expected " + std::to_string(n));
  }
  if (profile.villagers.size() != n) {
    out.push_back("villager vector has length " + std::to_string(profile.villagers.size()) +
                  ", expected " + std::to_string(n));
  }
  bool finite = true;
  for (std::size_t i = 0; i < profile.effort.size(); ++i) {
    if (!std::isfinite(profile.effort[i])) {
      out.push_back("non-finite ranger effort on target " + std::to_string(i));
      finite = false;
    } else if (profile.effort[i] < 0.0) {
      out.push_back("negative ranger effort on target " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < profile.villagers.size(); ++i) {
    if (profile.villagers[i] < 0) {
      out.push_back("negative villager count on target " + std::to_string(i));
    }
  }
  if (finite && profile.total_effort() > instance.ranger_budget + kBudgetTolerance) {
    out.push_back("ranger budget exceeded");
  }
  if (profile.total_villagers() > instance.villager_budget) {
    out.push_back("villager budget exceeded");
  }
  return out;
}

namespace {

SolveResult finish_evaluation(const Instance& instance, const StrategyProfile& profile,
                              const std::vector<double>& coverage) {
  const BestResponse br = best_response(instance, coverage);
  SolveResult result;
  result.profile = profile;
  result.attacked = br.target;
  result.defender_utility = br.defender_utility;
  result.attacker_utility = br.attacker_utility;
  return result;
}

}  // namespace

SolveResult evaluate_profile(const Instance& instance, const StrategyProfile& profile) {
  if (auto violations = validate_profile(instance, profile); !violations.empty()) {
    throw ValidationError(std::move(violations));
  }
  return finish_evaluation(instance, profile, compute_coverage(instance, profile));
}

SolveResult evaluate_profile(const TargetSpecificInstance& instance,
                             const StrategyProfile& profile) {
  if (auto violations = validate_profile(instance.base, profile); !violations.empty()) {
    throw ValidationError(std::move(violations));
  }
  return finish_evaluation(instance.base, profile, compute_coverage(instance, profile));
}

double value_bound(const Instance& instance) {
  double m = 1.0;
  for (const auto* v : {&instance.reward_def, &instance.penalty_def, &instance.reward_att,
                        &instance.penalty_att}) {
    for (double x : *v) m = std::max(m, std::abs(x));
  }
  m = std::max(m, instance.ranger_budget);
  m = std::max(m, static_cast<double>(instance.villager_budget));
  return m;
}

}  // namespace racpp
