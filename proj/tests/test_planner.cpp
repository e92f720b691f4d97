#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "racpp/cli.hpp"
#include "racpp/planner.hpp"
#include "support.hpp"

using namespace racpp;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "racpp_planner_tests";
  fs::create_directories(dir);
  return dir / name;
}

fs::path case_study_path() { return fs::path(RACPP_DATA_DIR) / "case_study.json"; }

int run(const std::vector<std::string>& args, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  const int code = cli_dispatch(args, out, err);
  if (out_text) *out_text = out.str();
  return code;
}

ScenarioInstance small_scenario() {
  ScenarioInstance s;
  s.game = testing::make({4, 2.0, 2, 3});
  s.labels = {"a", "b", "c", "d"};
  s.slope = {SlopeClass::kHigh, SlopeClass::kAverage, SlopeClass::kLow, SlopeClass::kAverage};
  s.baseline = StrategyProfile{{0.5, 0.5, 0.5, 0.5}, {1, 0, 0, 1}};
  return s;
}

}  // namespace

TEST_SUITE("planner") {
  TEST_CASE("instances round-trip bit-exactly") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      ScenarioInstance s;
      s.game = testing::make({5, 1.7, 3, seed});
      const fs::path path = scratch("round_trip.json");
      save_instance(path, s);
      const ScenarioInstance back = load_instance(path);
      CHECK(back.game.reward_def == s.game.reward_def);
      CHECK(back.game.penalty_def == s.game.penalty_def);
      CHECK(back.game.reward_att == s.game.reward_att);
      CHECK(back.game.penalty_att == s.game.penalty_att);
      CHECK(back.game.ranger_effectiveness == s.game.ranger_effectiveness);
      CHECK(back.game.villager_effectiveness == s.game.villager_effectiveness);
      CHECK(back.game.ranger_budget == s.game.ranger_budget);
      CHECK(back.game.villager_budget == s.game.villager_budget);
      CHECK_FALSE(back.target_specific());
    }
    const ScenarioInstance meta = small_scenario();
    const ScenarioInstance back = scenario_from_json(scenario_to_json(meta));
    CHECK(back.labels == meta.labels);
    CHECK(back.slope == meta.slope);
    CHECK(*back.baseline == *meta.baseline);
  }

  TEST_CASE("per-target effectiveness selects the target-specific path") {
    ScenarioInstance s = small_scenario();
    s.villager_eff = {0.1, 0.2, 0.3, 0.4};
    const ScenarioInstance back = scenario_from_json(scenario_to_json(s));
    CHECK(back.target_specific());
    CHECK(back.villager_eff == s.villager_eff);
    CHECK(back.ranger_eff.empty());
    CHECK_THROWS_AS(solve_scenario(back, Algorithm::kHw, 1e-3), InvalidInstance);
    CHECK(solve_scenario(back, Algorithm::kTdbs, 1e-3).defender_utility <=
          solve_scenario(back, Algorithm::kOracle, 1e-3).defender_utility + 1e-9);
  }

  TEST_CASE("malformed documents name the field") {
    nlohmann::json doc = scenario_to_json(small_scenario());
    doc.erase("reward_attacker");
    try {
      scenario_from_json(doc);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("reward_attacker") != std::string::npos);
    }
    doc = scenario_to_json(small_scenario());
    doc["penalty_defender"][2] = "x";
    CHECK_THROWS_WITH_AS(scenario_from_json(doc), doctest::Contains("penalty_defender[2]"), ParseError);
    doc = scenario_to_json(small_scenario());
    doc["slope_class"][0] = "steep";
    CHECK_THROWS_AS(scenario_from_json(doc), ParseError);
    doc = scenario_to_json(small_scenario());
    doc["penalty_attacker"][0] = 1.0;
    CHECK_THROWS_AS(scenario_from_json(doc), InvalidInstance);
  }

  TEST_CASE("results round-trip and re-validate") {
    const ScenarioInstance s = small_scenario();
    for (Algorithm a : {Algorithm::kTdbs, Algorithm::kHw, Algorithm::kOracle}) {
      const SolveResult r = solve_scenario(s, a, 1e-3);
      const fs::path path = scratch("result.json");
      save_result(path, r);
      const SolveResult back = load_result(path);
      CHECK(back.profile == r.profile);
      CHECK(back.defender_utility == r.defender_utility);
      CHECK(back.attacker_utility == r.attacker_utility);
      CHECK(back.attacked == r.attacked);
      CHECK(back.diagnostics == r.diagnostics);
      CHECK(validate_profile(s.game, back.profile).empty());
      CHECK(std::abs(evaluate_profile(s.game, back.profile).defender_utility - back.defender_utility) <= 1e-12);
    }
  }

  TEST_CASE("case-study file parses into the 21-target table") {
    const ScenarioInstance s = load_instance(case_study_path());
    REQUIRE(s.game.size() == 21);
    CHECK(s.game.reward_att.front() == 6.83);
    CHECK(s.game.reward_att.back() == 5.70);
    for (std::size_t i = 0; i < 21; ++i) {
      CHECK(s.game.reward_def[i] == 10.0);
      CHECK(s.game.penalty_att[i] == -10.0);
      CHECK(s.game.penalty_def[i] == -s.game.reward_att[i]);
    }
    REQUIRE(s.baseline);
    CHECK(validate_profile(s.game, *s.baseline).empty());
    CHECK(s.slope.size() == 21);
    CHECK(s.labels.size() == 21);
  }

  TEST_CASE("budget sweep picks the best split for each budget") {
    const ScenarioInstance s = small_scenario();
    SweepOptions o;
    o.max_extra = 6;
    const auto rows = budget_sweep(s, o);
    REQUIRE(rows.size() == 7);
    CHECK(rows[0].rangers_added == 0);
    CHECK(rows[0].villagers_added == 0);
    CHECK(rows[0].defender_utility == doctest::Approx(solve_scenario(s, Algorithm::kHw, 1e-3).defender_utility));
    for (const auto& row : rows) {
      CHECK(3 * row.rangers_added + row.villagers_added <= row.extra_budget);
    }
    // b = 3: compare against every split directly.
    for (std::int64_t k = 0; k <= 1; ++k) {
      ScenarioInstance t = s;
      t.game.ranger_budget += static_cast<double>(k);
      t.game.villager_budget += 3 - 3 * k;
      CHECK(rows[3].defender_utility >= solve_scenario(t, Algorithm::kHw, 1e-3).defender_utility);
    }
    for (std::size_t b = 1; b < rows.size(); ++b) {
      CHECK(rows[b].defender_utility >= rows[b - 1].defender_utility - 1e-9);
    }
    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    CHECK(csv.str().rfind("extra_budget,rangers_added,villagers_added,defender_utility\n", 0) == 0);
  }

  TEST_CASE("case-study sweep never loses utility as the budget grows") {
    const ScenarioInstance s = with_effectiveness(load_instance(case_study_path()), 0.8, 0.2);
    const auto rows = budget_sweep(s, SweepOptions{});
    REQUIRE(rows.size() == 31);
    for (std::size_t b = 2; b < rows.size(); ++b) {
      CHECK(rows[b].defender_utility >= rows[b - 1].defender_utility - 1e-9);
    }
  }

  TEST_CASE("baseline comparison") {
    ScenarioInstance s = small_scenario();
    const BaselineComparison c = compare_with_baseline(s, Algorithm::kHw, 1e-3);
    CHECK(c.optimal_utility >= c.baseline_utility - 1e-9);
    CHECK(c.improvement >= -1e-9);
    CHECK(c.delta.size() == 4);

    s.baseline = c.optimal.profile;
    const BaselineComparison same = compare_with_baseline(s, Algorithm::kHw, 1e-3);
    for (double d : same.delta) CHECK(std::abs(d) <= 1e-12);
    CHECK(std::abs(same.improvement) <= 1e-12);

    s.baseline.reset();
    CHECK_THROWS_AS(compare_with_baseline(s, Algorithm::kHw, 1e-3), InvalidInstance);
    s.baseline = StrategyProfile{{3.0, 0.0, 0.0, 0.0}, {0, 0, 0, 0}};
    CHECK_THROWS_AS(compare_with_baseline(s, Algorithm::kHw, 1e-3), ValidationError);
  }

  TEST_CASE("effectiveness tally covers 45 settings") {
    const SettingsTally t = effectiveness_tally(small_scenario(), Algorithm::kHw, 1e-3);
    CHECK(t.settings.size() == 45);
    for (const auto& s : t.settings) {
      CHECK(s.e_p >= s.e_v);
      CHECK(s.optimal_utility >= s.baseline_utility - 1e-9);
    }
    for (std::size_t i = 0; i < 4; ++i) CHECK(t.increases[i] + t.decreases[i] <= 45);
  }

  TEST_CASE("terrain adjustment") {
    const ScenarioInstance s = small_scenario();
    const TargetSpecificInstance ts = terrain_adjust(s, 0.5, 0.5);
    CHECK(ts.villager_eff[0] == doctest::Approx(0.6));
    CHECK(ts.villager_eff[1] == 0.5);
    CHECK(ts.villager_eff[2] == doctest::Approx(0.4));
    CHECK(ts.ranger_eff[0] == doctest::Approx(0.6));
    const TargetSpecificInstance low = terrain_adjust(s, 0.95, 0.05);
    CHECK(low.villager_eff[2] == kMinEffectiveness);
    CHECK(low.ranger_eff[0] == kMaxEffectiveness);
    ScenarioInstance bare = s;
    bare.slope.clear();
    CHECK_THROWS_AS(terrain_adjust(bare, 0.5, 0.5), InvalidInstance);
  }

  TEST_CASE("command line") {
    const fs::path inst = scratch("cli_inst.json");
    const fs::path out = scratch("cli_out.json");
    fs::remove(out);
    CHECK(run({"gen", "--n", "5", "--rp", "2", "--rv", "2", "--seed", "9", "--output", inst.string()}) == 0);
    CHECK(run({"solve", "--algorithm", "hw", "--input", inst.string(), "--output", out.string()}) == 0);
    CHECK(fs::exists(out));
    CHECK(load_result(out).profile.effort.size() == 5);
    CHECK(run({"solve", "--algorithm", "foo", "--input", inst.string()}) == 2);
    CHECK(run({"solve", "--input", (fs::path(inst).replace_filename("missing.json")).string()}) == 2);
    CHECK(run({}) == 2);
    CHECK(run({"frobnicate"}) == 2);

    std::string text;
    CHECK(run({"--help"}, &text) == 0);
    CHECK(text.find("sweep") != std::string::npos);

    std::ofstream(scratch("bad.json")) << R"({"n": 2, "ranger_budget": 1})";
    CHECK(run({"solve", "--input", scratch("bad.json").string()}) == 1);

    CHECK(run({"solve", "--input", inst.string()}, &text) == 0);
    std::string explicit_eps;
    CHECK(run({"solve", "--algorithm", "tdbs", "--epsilon", "1e-3", "--input", inst.string()},
              &explicit_eps) == 0);
    CHECK(explicit_eps == text);
    const SolveResult tdbs = result_from_json(nlohmann::json::parse(text));
    CHECK(validate_profile(load_instance(inst).game, tdbs.profile).empty());

    const fs::path sweep = scratch("sweep.csv");
    CHECK(run({"sweep", "--input", case_study_path().string(), "--budget-max", "4", "--e-p", "0.8",
               "--e-v", "0.2", "--output", sweep.string()}) == 0);
    std::ifstream sweep_in(sweep);
    std::string header;
    std::getline(sweep_in, header);
    CHECK(header == "extra_budget,rangers_added,villagers_added,defender_utility");

    const fs::path bench = scratch("bench.csv");
    CHECK(run({"bench", "--n", "4", "5", "--rp", "1", "--rv", "1", "--runs", "2", "--output",
               bench.string()}) == 0);
    CHECK(run({"bench", "--n", "4", "5", "--rp", "1", "2", "3"}) == 2);

    const fs::path cmp = scratch("compare.json");
    const fs::path tally = scratch("tally.csv");
    CHECK(run({"compare", "--algorithm", "hw", "--input", case_study_path().string(), "--output",
               cmp.string(), "--tally", tally.string()}) == 0);
    std::ifstream cmp_in(cmp);
    const auto doc = nlohmann::json::parse(cmp_in);
    CHECK(doc.at("optimal_utility").get<double>() >= doc.at("baseline_utility").get<double>());
  }
}
