#include "racpp/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "racpp/bench.hpp"
#include "racpp/planner.hpp"
#include "racpp/tdbs.hpp"

namespace racpp {

namespace {

const std::vector<std::string> kAlgorithms = {"tdbs", "hw", "oracle"};

struct Options {
  std::string algorithm = "tdbs";
  double epsilon = kDefaultTdbsEpsilon;
  std::string input;
  std::string output;
  std::uint64_t seed = 0;
  int runs = 30;
  double timeout = 7200.0;
  std::int64_t budget_max = 30;
  double cost_ranger = 3.0;
  double cost_villager = 1.0;
  std::vector<std::size_t> n = {10};
  std::vector<double> rp = {1.0};
  std::vector<std::int64_t> rv = {1};
  std::vector<std::string> algorithms = {"tdbs", "hw"};
  std::optional<double> e_p;
  std::optional<double> e_v;
  std::string tally;
};

// Writes to the named file, or to `fallback` when the name is empty.
template <typename Emit>
void emit(const std::string& path, std::ostream& fallback, Emit&& body) {
  if (path.empty()) {
    body(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write '" + path + "'");
  body(file);
}

ScenarioInstance load_with_overrides(const Options& o) {
  ScenarioInstance s = load_instance(o.input);
  if (o.e_p || o.e_v) {
    s = with_effectiveness(s, o.e_p.value_or(s.game.ranger_effectiveness),
                           o.e_v.value_or(s.game.villager_effectiveness));
    check_instance(s.game);
  }
  return s;
}

void run_solve(const Options& o, std::ostream& out) {
  const ScenarioInstance s = load_with_overrides(o);
  SolveLimits limits{Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                        std::chrono::duration<double>(o.timeout))};
  const SolveResult result = solve_scenario(s, parse_algorithm(o.algorithm), o.epsilon, limits);
  const std::vector<std::string> problems = validate_profile(s.game, result.profile);
  if (!problems.empty()) throw ValidationError(problems);
  if (o.output.empty()) {
    out << result_to_json(result).dump(2) << '\n';
  } else {
    save_result(o.output, result);
    out << "attacked " << result.attacked << ", defender utility " << std::setprecision(10)
        << result.defender_utility << '\n';
  }
}

void run_gen(const Options& o, std::ostream& out) {
  GenParams p;
  p.n = o.n.front();
  p.ranger_budget = o.rp.front();
  p.villager_budget = o.rv.front();
  p.seed = o.seed;
  ScenarioInstance s;
  s.game = generate_instance(p);
  emit(o.output, out, [&](std::ostream& os) { os << scenario_to_json(s).dump(2) << '\n'; });
}

void run_bench(const Options& o, std::ostream& out) {
  const std::size_t cells = std::max({o.n.size(), o.rp.size(), o.rv.size()});
  const auto pick = [cells](const auto& v, std::size_t k, const char* name) {
    if (v.size() != 1 && v.size() != cells) {
      throw CLI::ValidationError(std::string("--") + name,
                                 "give one value or as many as the longest grid list");
    }
    return v.size() == 1 ? v.front() : v[k];
  };
  std::vector<GenParams> grid;
  for (std::size_t k = 0; k < cells; ++k) {
    GenParams p;
    p.n = pick(o.n, k, "n");
    p.ranger_budget = pick(o.rp, k, "rp");
    p.villager_budget = pick(o.rv, k, "rv");
    p.seed = o.seed;
    grid.push_back(p);
  }
  std::vector<Algorithm> algorithms;
  for (const auto& a : o.algorithms) algorithms.push_back(parse_algorithm(a));
  const BenchReport report = run_benchmark(grid, algorithms, {o.runs, o.timeout, o.epsilon});
  emit(o.output, out, [&](std::ostream& os) { write_csv(os, report); });
}

void run_sweep(const Options& o, std::ostream& out) {
  const ScenarioInstance s = load_with_overrides(o);
  SweepOptions opts;
  opts.max_extra = o.budget_max;
  opts.cost_ranger = o.cost_ranger;
  opts.cost_villager = o.cost_villager;
  opts.algorithm = parse_algorithm(o.algorithm);
  opts.epsilon = o.epsilon;
  const auto rows = budget_sweep(s, opts);
  emit(o.output, out, [&](std::ostream& os) { write_sweep_csv(os, rows); });
}

void run_compare(const Options& o, std::ostream& out) {
  const ScenarioInstance s = load_with_overrides(o);
  const Algorithm algorithm = parse_algorithm(o.algorithm);
  const BaselineComparison c = compare_with_baseline(s, algorithm, o.epsilon);
  emit(o.output, out, [&](std::ostream& os) { os << comparison_to_json(c).dump(2) << '\n'; });
  if (!o.tally.empty()) {
    const SettingsTally tally = effectiveness_tally(s, algorithm, o.epsilon);
    emit(o.tally, out, [&](std::ostream& os) { write_tally_csv(os, tally, s.labels); });
  }
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Patrol resource planner for ranger and villager allocation", "racpp"};
  app.require_subcommand(1);
  Options o;

  const auto algorithm_flag = [&](CLI::App* cmd) {
    cmd->add_option("--algorithm", o.algorithm, "Solver")
        ->check(CLI::IsMember(kAlgorithms))
        ->capture_default_str();
    cmd->add_option("--epsilon", o.epsilon, "TDBS effort resolution")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  const auto effectiveness_flags = [&](CLI::App* cmd) {
    cmd->add_option("--e-p", o.e_p, "Override ranger effectiveness");
    cmd->add_option("--e-v", o.e_v, "Override villager effectiveness");
  };

  CLI::App* solve = app.add_subcommand("solve", "Solve an instance file");
  algorithm_flag(solve);
  effectiveness_flags(solve);
  solve->add_option("--input", o.input, "Instance JSON")->required()->check(CLI::ExistingFile);
  solve->add_option("--output", o.output, "Result JSON (stdout if omitted)");
  solve->add_option("--timeout", o.timeout, "Seconds before giving up")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI::App* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--n", o.n, "Target count")->expected(1)->capture_default_str();
  gen->add_option("--rp", o.rp, "Ranger budget")->expected(1)->capture_default_str();
  gen->add_option("--rv", o.rv, "Villager budget")->expected(1)->capture_default_str();
  gen->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  gen->add_option("--output", o.output, "Instance JSON (stdout if omitted)");

  CLI::App* bench = app.add_subcommand("bench", "Time solvers on random instances");
  bench->add_option("--algorithm", o.algorithms, "Solvers to time")
      ->check(CLI::IsMember(kAlgorithms))
      ->capture_default_str();
  bench->add_option("--epsilon", o.epsilon, "TDBS effort resolution")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--n", o.n, "Target counts, one per grid cell")->capture_default_str();
  bench->add_option("--rp", o.rp, "Ranger budgets, one per grid cell")->capture_default_str();
  bench->add_option("--rv", o.rv, "Villager budgets, one per grid cell")->capture_default_str();
  bench->add_option("--seed", o.seed, "First seed of each cell")->capture_default_str();
  bench->add_option("--runs", o.runs, "Instances per cell")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--timeout", o.timeout, "Per-run cap in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--output", o.output, "CSV report (stdout if omitted)");

  CLI::App* sweep = app.add_subcommand("sweep", "Best split of extra recruiting budget");
  algorithm_flag(sweep);
  effectiveness_flags(sweep);
  sweep->add_option("--input", o.input, "Instance JSON")->required()->check(CLI::ExistingFile);
  sweep->add_option("--output", o.output, "CSV (stdout if omitted)");
  sweep->add_option("--budget-max", o.budget_max, "Largest extra budget")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sweep->add_option("--cost-ranger", o.cost_ranger, "Cost of one ranger")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep->add_option("--cost-villager", o.cost_villager, "Cost of one villager")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI::App* compare = app.add_subcommand("compare", "Compare the optimum with the baseline");
  algorithm_flag(compare);
  effectiveness_flags(compare);
  compare->add_option("--input", o.input, "Instance JSON with a baseline")
      ->required()
      ->check(CLI::ExistingFile);
  compare->add_option("--output", o.output, "Comparison JSON (stdout if omitted)");
  compare->add_option("--tally", o.tally, "CSV of coverage changes over 45 effectiveness settings");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*solve) run_solve(o, out);
    if (*gen) run_gen(o, out);
    if (*bench) run_bench(o, out);
    if (*sweep) {
      if (o.algorithm == "oracle") throw CLI::ValidationError("--algorithm", "sweep runs with tdbs or hw");
      run_sweep(o, out);
    }
    if (*compare) run_compare(o, out);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace racpp
