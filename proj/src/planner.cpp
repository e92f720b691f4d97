#include "racpp/planner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "racpp/oracle.hpp"
#include "racpp/tdbs.hpp"
#include "racpp/waterfill.hpp"

namespace racpp {

using nlohmann::json;

namespace {

// Coverage differences smaller than this count as no change in tallies.
constexpr double kCoverageChange = 1e-9;

const json& field(const json& doc, const std::string& name) {
  if (!doc.is_object()) throw ParseError("document root must be an object");
  const auto it = doc.find(name);
  if (it == doc.end()) throw ParseError("missing field '" + name + "'");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ParseError("field '" + path + "' must be a number");
  return v.get<double>();
}

std::int64_t integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ParseError("field '" + path + "' must be an integer");
  return v.get<std::int64_t>();
}

std::vector<double> numbers(const json& v, const std::string& path, std::size_t n) {
  if (!v.is_array()) throw ParseError("field '" + path + "' must be an array");
  if (v.size() != n) {
    throw ParseError("field '" + path + "' has " + std::to_string(v.size()) + " entries, expected " +
                     std::to_string(n));
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(number(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<std::int64_t> integers(const json& v, const std::string& path, std::size_t n) {
  if (!v.is_array() || v.size() != n) {
    throw ParseError("field '" + path + "' must be an array of " + std::to_string(n) + " integers");
  }
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(integer(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

// Scalar or per-target array; the array form fills `per_target`.
double effectiveness(const json& v, const std::string& path, std::size_t n,
                     std::vector<double>& per_target) {
  if (v.is_array()) {
    per_target = numbers(v, path, n);
    return per_target.front();
  }
  return number(v, path);
}

SlopeClass parse_slope(const json& v, const std::string& path) {
  if (v == "high") return SlopeClass::kHigh;
  if (v == "average") return SlopeClass::kAverage;
  if (v == "low") return SlopeClass::kLow;
  throw ParseError("field '" + path + "' must be one of high, average, low");
}

const char* slope_name(SlopeClass s) {
  switch (s) {
    case SlopeClass::kHigh: return "high";
    case SlopeClass::kAverage: return "average";
    case SlopeClass::kLow: return "low";
  }
  return "average";
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
}

double improvement_of(double u_opt, double u_base, bool& relative) {
  relative = u_base != 0.0;
  return relative ? (u_opt - u_base) / std::abs(u_base) : u_opt - u_base;
}

SolveResult evaluate_scenario(const ScenarioInstance& s, const StrategyProfile& profile) {
  return s.target_specific() ? evaluate_profile(s.as_target_specific(), profile)
                             : evaluate_profile(s.game, profile);
}

std::vector<double> coverage_of(const ScenarioInstance& s, const StrategyProfile& profile) {
  return s.target_specific() ? compute_coverage(s.as_target_specific(), profile)
                             : compute_coverage(s.game, profile);
}

}  // namespace

TargetSpecificInstance ScenarioInstance::as_target_specific() const {
  TargetSpecificInstance ts{game, ranger_eff, villager_eff};
  if (ts.villager_eff.empty()) ts.villager_eff.assign(game.size(), game.villager_effectiveness);
  return ts;
}

ScenarioInstance scenario_from_json(const json& doc) {
  ScenarioInstance s;
  const std::int64_t n = integer(field(doc, "n"), "n");
  if (n <= 0) throw ParseError("field 'n' must be positive");
  const auto size = static_cast<std::size_t>(n);
  Instance& g = s.game;
  g.ranger_budget = number(field(doc, "ranger_budget"), "ranger_budget");
  g.villager_budget = integer(field(doc, "villager_budget"), "villager_budget");
  g.ranger_effectiveness = effectiveness(field(doc, "e_p"), "e_p", size, s.ranger_eff);
  g.villager_effectiveness = effectiveness(field(doc, "e_v"), "e_v", size, s.villager_eff);
  g.reward_def = numbers(field(doc, "reward_defender"), "reward_defender", size);
  g.penalty_def = numbers(field(doc, "penalty_defender"), "penalty_defender", size);
  g.reward_att = numbers(field(doc, "reward_attacker"), "reward_attacker", size);
  g.penalty_att = numbers(field(doc, "penalty_attacker"), "penalty_attacker", size);

  if (const auto it = doc.find("labels"); it != doc.end()) {
    if (!it->is_array() || it->size() != size) {
      throw ParseError("field 'labels' must be an array of " + std::to_string(size) + " strings");
    }
    for (std::size_t i = 0; i < size; ++i) {
      if (!(*it)[i].is_string()) throw ParseError("field 'labels[" + std::to_string(i) + "]' must be a string");
      s.labels.push_back((*it)[i].get<std::string>());
    }
  }
  if (const auto it = doc.find("slope_class"); it != doc.end()) {
    if (!it->is_array() || it->size() != size) {
      throw ParseError("field 'slope_class' must be an array of " + std::to_string(size) +
                       " entries");
    }
    for (std::size_t i = 0; i < size; ++i) {
      s.slope.push_back(parse_slope((*it)[i], "slope_class[" + std::to_string(i) + "]"));
    }
  }
  if (const auto it = doc.find("baseline"); it != doc.end()) {
    StrategyProfile b;
    b.effort = numbers(field(*it, "p"), "baseline.p", size);
    b.villagers = integers(field(*it, "v"), "baseline.v", size);
    s.baseline = std::move(b);
  }
  if (const auto it = doc.find("note"); it != doc.end() && it->is_string()) {
    s.note = it->get<std::string>();
  }

  if (s.target_specific()) {
    check_instance(s.as_target_specific());
  } else {
    check_instance(g);
  }
  return s;
}

json scenario_to_json(const ScenarioInstance& s) {
  const Instance& g = s.game;
  json doc;
  doc["n"] = g.size();
  doc["ranger_budget"] = g.ranger_budget;
  doc["villager_budget"] = g.villager_budget;
  doc["e_p"] = s.ranger_eff.empty() ? json(g.ranger_effectiveness) : json(s.ranger_eff);
  doc["e_v"] = s.villager_eff.empty() ? json(g.villager_effectiveness) : json(s.villager_eff);
  doc["reward_defender"] = g.reward_def;
  doc["penalty_defender"] = g.penalty_def;
  doc["reward_attacker"] = g.reward_att;
  doc["penalty_attacker"] = g.penalty_att;
  if (!s.labels.empty()) doc["labels"] = s.labels;
  if (!s.slope.empty()) {
    json classes = json::array();
    for (SlopeClass c : s.slope) classes.push_back(slope_name(c));
    doc["slope_class"] = classes;
  }
  if (s.baseline) doc["baseline"] = {{"p", s.baseline->effort}, {"v", s.baseline->villagers}};
  if (!s.note.empty()) doc["note"] = s.note;
  return doc;
}

ScenarioInstance load_instance(const std::filesystem::path& path) {
  return scenario_from_json(read_json(path));
}

void save_instance(const std::filesystem::path& path, const ScenarioInstance& scenario) {
  write_json(path, scenario_to_json(scenario));
}

json result_to_json(const SolveResult& r) {
  return {{"attacked", r.attacked},
          {"defender_utility", r.defender_utility},
          {"attacker_utility", r.attacker_utility},
          {"profile", {{"p", r.profile.effort}, {"v", r.profile.villagers}}},
          {"diagnostics", r.diagnostics}};
}

SolveResult result_from_json(const json& doc) {
  SolveResult r;
  r.attacked = static_cast<std::size_t>(integer(field(doc, "attacked"), "attacked"));
  r.defender_utility = number(field(doc, "defender_utility"), "defender_utility");
  r.attacker_utility = number(field(doc, "attacker_utility"), "attacker_utility");
  const json& profile = field(doc, "profile");
  const json& p = field(profile, "p");
  const std::size_t n = p.is_array() ? p.size() : 0;
  r.profile.effort = numbers(p, "profile.p", n);
  r.profile.villagers = integers(field(profile, "v"), "profile.v", n);
  if (const auto it = doc.find("diagnostics"); it != doc.end()) {
    if (!it->is_object()) throw ParseError("field 'diagnostics' must be an object");
    for (const auto& [key, value] : it->items()) {
      if (!value.is_number_unsigned()) {
        throw ParseError("field 'diagnostics." + key + "' must be a nonnegative integer");
      }
      r.diagnostics[key] = value.get<std::uint64_t>();
    }
  }
  return r;
}

void save_result(const std::filesystem::path& path, const SolveResult& result) {
  write_json(path, result_to_json(result));
}

SolveResult load_result(const std::filesystem::path& path) {
  return result_from_json(read_json(path));
}

SolveResult solve_scenario(const ScenarioInstance& s, Algorithm algorithm, double epsilon,
                           const SolveLimits& limits) {
  if (!s.target_specific()) return solve_with(s.game, algorithm, epsilon, limits);
  const TargetSpecificInstance ts = s.as_target_specific();
  switch (algorithm) {
    case Algorithm::kTdbs: return solve_tdbs(ts, make_tdbs_config(ts.base, epsilon), limits);
    case Algorithm::kOracle: return solve_oracle(ts);
    case Algorithm::kHw:
      throw InvalidInstance("hw needs scalar e_p and e_v; use tdbs or oracle for per-target values");
  }
  throw std::invalid_argument("unknown algorithm");
}

ScenarioInstance with_effectiveness(const ScenarioInstance& scenario, double e_p, double e_v) {
  ScenarioInstance s = scenario;
  s.game.ranger_effectiveness = e_p;
  s.game.villager_effectiveness = e_v;
  s.ranger_eff.clear();
  s.villager_eff.clear();
  return s;
}

std::vector<BudgetSweepRow> budget_sweep(const ScenarioInstance& scenario,
                                         const SweepOptions& options) {
  if (options.algorithm == Algorithm::kOracle) {
    throw std::invalid_argument("budget sweep runs with tdbs or hw");
  }
  if (!(options.cost_ranger > 0.0) || !(options.cost_villager > 0.0)) {
    throw std::invalid_argument("recruit costs must be positive");
  }
  if (options.max_extra < 0) throw std::invalid_argument("maximum extra budget must be nonnegative");

  std::vector<BudgetSweepRow> rows;
  for (std::int64_t b = 0; b <= options.max_extra; ++b) {
    const double budget = static_cast<double>(b);
    std::optional<BudgetSweepRow> best;
    for (std::int64_t k = 0; static_cast<double>(k) * options.cost_ranger <= budget; ++k) {
      const auto villagers = static_cast<std::int64_t>(
          std::floor((budget - static_cast<double>(k) * options.cost_ranger) / options.cost_villager));
      ScenarioInstance s = scenario;
      s.game.ranger_budget += static_cast<double>(k);
      s.game.villager_budget += villagers;
      const double u = solve_scenario(s, options.algorithm, options.epsilon).defender_utility;
      if (!best || u > best->defender_utility) best = BudgetSweepRow{b, k, villagers, u};
    }
    rows.push_back(*best);
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<BudgetSweepRow>& rows) {
  out << "extra_budget,rangers_added,villagers_added,defender_utility\n";
  const auto precision = out.precision(17);
  for (const auto& r : rows) {
    out << r.extra_budget << ',' << r.rangers_added << ',' << r.villagers_added << ','
        << r.defender_utility << '\n';
  }
  out.precision(precision);
}

BaselineComparison compare_with_baseline(const ScenarioInstance& scenario, Algorithm algorithm,
                                         double epsilon) {
  if (!scenario.baseline) throw InvalidInstance("scenario has no baseline profile");
  BaselineComparison c;
  const SolveResult base = evaluate_scenario(scenario, *scenario.baseline);
  c.optimal = solve_scenario(scenario, algorithm, epsilon);
  c.baseline_coverage = coverage_of(scenario, *scenario.baseline);
  c.optimal_coverage = coverage_of(scenario, c.optimal.profile);
  for (std::size_t i = 0; i < c.optimal_coverage.size(); ++i) {
    c.delta.push_back(c.optimal_coverage[i] - c.baseline_coverage[i]);
  }
  c.baseline_utility = base.defender_utility;
  c.optimal_utility = c.optimal.defender_utility;
  c.improvement = improvement_of(c.optimal_utility, c.baseline_utility, c.relative);
  return c;
}

json comparison_to_json(const BaselineComparison& c) {
  return {{"baseline_utility", c.baseline_utility},
          {"optimal_utility", c.optimal_utility},
          {"improvement", c.improvement},
          {"improvement_is_relative", c.relative},
          {"baseline_coverage", c.baseline_coverage},
          {"optimal_coverage", c.optimal_coverage},
          {"coverage_delta", c.delta},
          {"optimal", result_to_json(c.optimal)}};
}

SettingsTally effectiveness_tally(const ScenarioInstance& scenario, Algorithm algorithm,
                                  double epsilon) {
  const std::size_t n = scenario.game.size();
  SettingsTally tally;
  tally.increases.assign(n, 0);
  tally.decreases.assign(n, 0);
  for (int ep = 1; ep <= 9; ++ep) {
    for (int ev = 1; ev <= ep; ++ev) {
      const ScenarioInstance s = with_effectiveness(scenario, ep / 10.0, ev / 10.0);
      const BaselineComparison c = compare_with_baseline(s, algorithm, epsilon);
      tally.settings.push_back(
          {ep / 10.0, ev / 10.0, c.baseline_utility, c.optimal_utility, c.improvement});
      for (std::size_t i = 0; i < n; ++i) {
        if (c.delta[i] > kCoverageChange) ++tally.increases[i];
        if (c.delta[i] < -kCoverageChange) ++tally.decreases[i];
      }
    }
  }
  return tally;
}

void write_tally_csv(std::ostream& out, const SettingsTally& tally,
                     const std::vector<std::string>& labels) {
  out << "target,label,increases,decreases\n";
  for (std::size_t i = 0; i < tally.increases.size(); ++i) {
    out << i << ',' << (i < labels.size() ? labels[i] : "") << ',' << tally.increases[i] << ','
        << tally.decreases[i] << '\n';
  }
}

TargetSpecificInstance terrain_adjust(const ScenarioInstance& scenario, double e_p, double e_v) {
  const std::size_t n = scenario.game.size();
  if (scenario.slope.size() != n) throw InvalidInstance("scenario has no slope classes");
  const auto shift = [](double e, SlopeClass c) {
    const double d = c == SlopeClass::kHigh ? kTerrainShift
                     : c == SlopeClass::kLow ? -kTerrainShift
                                             : 0.0;
    if (d == 0.0) return e;
    return std::clamp(e + d, kMinEffectiveness, kMaxEffectiveness);
  };
  TargetSpecificInstance ts{scenario.game, {}, {}};
  ts.base.ranger_effectiveness = e_p;
  ts.base.villager_effectiveness = e_v;
  for (std::size_t i = 0; i < n; ++i) {
    ts.ranger_eff.push_back(shift(e_p, scenario.slope[i]));
    ts.villager_eff.push_back(shift(e_v, scenario.slope[i]));
  }
  check_instance(ts);
  return ts;
}

}  // namespace racpp
