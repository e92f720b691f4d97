#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "racpp/bench.hpp"
#include "racpp/model.hpp"

namespace racpp {

/// Malformed instance or result document; the message names the offending field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SlopeClass { kHigh, kAverage, kLow };

/// An instance file: the game plus optional planning metadata. When
/// `ranger_eff` or `villager_eff` is non-empty it holds one value per target
/// and the scenario is solved through the target-specific path.
struct ScenarioInstance {
  Instance game;
  std::vector<double> ranger_eff;
  std::vector<double> villager_eff;
  std::vector<std::string> labels;
  std::vector<SlopeClass> slope;
  std::optional<StrategyProfile> baseline;
  std::string note;

  bool target_specific() const { return !ranger_eff.empty() || !villager_eff.empty(); }
  TargetSpecificInstance as_target_specific() const;
};

/// Throws ParseError for missing or mistyped fields and InvalidInstance for
/// games that break the model invariants.
ScenarioInstance scenario_from_json(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const ScenarioInstance& scenario);
ScenarioInstance load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const ScenarioInstance& scenario);

nlohmann::json result_to_json(const SolveResult& result);
SolveResult result_from_json(const nlohmann::json& doc);
void save_result(const std::filesystem::path& path, const SolveResult& result);
SolveResult load_result(const std::filesystem::path& path);

/// Solves either flavour. HW accepts scalar effectiveness only.
SolveResult solve_scenario(const ScenarioInstance& scenario, Algorithm algorithm, double epsilon,
                           const SolveLimits& limits = {});

/// Copy of the scenario with scalar effectiveness (e_p, e_v) everywhere.
ScenarioInstance with_effectiveness(const ScenarioInstance& scenario, double e_p, double e_v);

struct BudgetSweepRow {
  std::int64_t extra_budget = 0;
  std::int64_t rangers_added = 0;
  std::int64_t villagers_added = 0;
  double defender_utility = 0.0;
};

struct SweepOptions {
  std::int64_t max_extra = 30;
  double cost_ranger = 3.0;
  double cost_villager = 1.0;
  Algorithm algorithm = Algorithm::kHw;
  double epsilon = 1e-3;
};

/// Rows for extra budgets 0..max_extra. Each row is the best split of the
/// extra budget into whole rangers and villagers; leftover budget is unspent.
std::vector<BudgetSweepRow> budget_sweep(const ScenarioInstance& scenario,
                                         const SweepOptions& options);
void write_sweep_csv(std::ostream& out, const std::vector<BudgetSweepRow>& rows);

struct BaselineComparison {
  std::vector<double> baseline_coverage;
  std::vector<double> optimal_coverage;
  std::vector<double> delta;  // optimal minus baseline, per target
  double baseline_utility = 0.0;
  double optimal_utility = 0.0;
  // (u_opt - u_base) / |u_base|, or the plain difference when u_base is 0.
  double improvement = 0.0;
  bool relative = true;
  SolveResult optimal;
};

/// Throws InvalidInstance when the scenario has no baseline and
/// ValidationError when the baseline breaks the budget.
BaselineComparison compare_with_baseline(const ScenarioInstance& scenario, Algorithm algorithm,
                                         double epsilon);
nlohmann::json comparison_to_json(const BaselineComparison& comparison);

struct SettingOutcome {
  double e_p = 0.0;
  double e_v = 0.0;
  double baseline_utility = 0.0;
  double optimal_utility = 0.0;
  double improvement = 0.0;
};

struct SettingsTally {
  std::vector<SettingOutcome> settings;
  std::vector<int> increases;  // per target: settings where coverage rose
  std::vector<int> decreases;  // per target: settings where coverage fell
};

/// Baseline comparison over every (e_p, e_v) in {0.1, ..., 0.9}^2 with e_p >= e_v.
SettingsTally effectiveness_tally(const ScenarioInstance& scenario, Algorithm algorithm,
                                  double epsilon);
void write_tally_csv(std::ostream& out, const SettingsTally& tally,
                     const std::vector<std::string>& labels);

inline constexpr double kTerrainShift = 0.1;
inline constexpr double kMinEffectiveness = 0.01;
inline constexpr double kMaxEffectiveness = 0.99;

/// Per-target effectiveness from slope classes: high +0.1, average unchanged,
/// low -0.1, shifted values clamped to [0.01, 0.99]. Applied to both e_p and e_v.
TargetSpecificInstance terrain_adjust(const ScenarioInstance& scenario, double e_p, double e_v);

}  // namespace racpp
