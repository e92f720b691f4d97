#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "racpp/model.hpp"

namespace racpp {

/// Shape and seed of one random instance. Rewards are drawn from
/// [0, reward_max), penalties from [penalty_min, 0), effectiveness values
/// with 0 < e_v < e_p < 1.
struct GenParams {
  std::size_t n = 10;
  double ranger_budget = 1.0;
  std::int64_t villager_budget = 1;
  std::uint64_t seed = 0;
  double reward_max = 10.0;
  double penalty_min = -10.0;
};

Instance generate_instance(const GenParams& params);

enum class Algorithm { kTdbs, kHw, kOracle };

/// Accepts "tdbs", "hw", "oracle"; throws std::invalid_argument otherwise.
Algorithm parse_algorithm(std::string_view name);
std::string_view algorithm_name(Algorithm algorithm);

/// Dispatches to the named solver. `epsilon` only affects TDBS.
SolveResult solve_with(const Instance& instance, Algorithm algorithm, double epsilon,
                       const SolveLimits& limits = {});

struct RuntimeStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
  double min = 0.0;
  double p97 = 0.0;     // linear interpolation between order statistics
};

RuntimeStats summarize_runtimes(std::vector<double> seconds);

struct BenchRow {
  std::string algorithm;
  std::size_t n = 0;
  double ranger_budget = 0.0;
  std::int64_t villager_budget = 0;
  int runs = 0;
  RuntimeStats stats;
  int timeouts = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
};

struct BenchOptions {
  int runs = 30;
  double timeout_seconds = 7200.0;
  double epsilon = 1e-3;
};

/// Per grid cell, `runs` instances seeded seed, seed+1, ... are solved by each
/// algorithm in turn. Runs past the timeout count at the timeout.
BenchReport run_benchmark(const std::vector<GenParams>& grid,
                          const std::vector<Algorithm>& algorithms, const BenchOptions& options);

void write_csv(std::ostream& out, const BenchReport& report);

}  // namespace racpp
