#include "racpp/bench.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include "racpp/oracle.hpp"
#include "racpp/tdbs.hpp"
#include "racpp/waterfill.hpp"

namespace racpp {

namespace {

// Uniform in [0, 1) from the top 53 bits; identical on every platform,
// unlike std::uniform_real_distribution.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double open_unit(std::mt19937_64& rng) {
  double x = 0.0;
  while (x == 0.0) x = unit(rng);
  return x;
}

}  // namespace

Instance generate_instance(const GenParams& params) {
  if (params.n == 0) throw InvalidInstance("generated instance needs at least one target");
  if (!(params.reward_max > 0.0) || !(params.penalty_min < 0.0)) {
    throw InvalidInstance("reward range must be [0, a) with a > 0, penalty range [b, 0) with b < 0");
  }
  if (!(params.ranger_budget >= 0.0) || params.villager_budget < 0) {
    throw InvalidInstance("budgets must be nonnegative");
  }
  std::mt19937_64 rng(params.seed);
  Instance g;
  g.ranger_budget = params.ranger_budget;
  g.villager_budget = params.villager_budget;

  double a = open_unit(rng), b = open_unit(rng);
  while (a == b) b = open_unit(rng);
  g.villager_effectiveness = std::min(a, b);
  g.ranger_effectiveness = std::max(a, b);

  const auto reward = [&] { return params.reward_max * unit(rng); };
  const auto penalty = [&] { return params.penalty_min * (1.0 - unit(rng)); };
  for (std::size_t i = 0; i < params.n; ++i) {
    g.reward_def.push_back(reward());
    g.penalty_def.push_back(penalty());
    g.reward_att.push_back(reward());
    g.penalty_att.push_back(penalty());
  }
  return g;
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "tdbs") return Algorithm::kTdbs;
  if (name == "hw") return Algorithm::kHw;
  if (name == "oracle") return Algorithm::kOracle;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

std::string_view algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kTdbs: return "tdbs";
    case Algorithm::kHw: return "hw";
    case Algorithm::kOracle: return "oracle";
  }
  return "unknown";
}

SolveResult solve_with(const Instance& instance, Algorithm algorithm, double epsilon,
                       const SolveLimits& limits) {
  switch (algorithm) {
    case Algorithm::kTdbs: return solve_tdbs(instance, make_tdbs_config(instance, epsilon), limits);
    case Algorithm::kHw: return solve_hw(instance, limits);
    case Algorithm::kOracle: return solve_oracle(instance);
  }
  throw std::invalid_argument("unknown algorithm");
}

RuntimeStats summarize_runtimes(std::vector<double> seconds) {
  RuntimeStats s;
  if (seconds.empty()) return s;
  std::sort(seconds.begin(), seconds.end());
  const double n = static_cast<double>(seconds.size());
  s.mean = std::accumulate(seconds.begin(), seconds.end(), 0.0) / n;
  if (seconds.size() > 1) {
    double ss = 0.0;
    for (double x : seconds) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / (n - 1.0));
  }
  s.min = seconds.front();
  const double pos = 0.97 * (n - 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, seconds.size() - 1);
  s.p97 = seconds[lo] + (pos - static_cast<double>(lo)) * (seconds[hi] - seconds[lo]);
  return s;
}

BenchReport run_benchmark(const std::vector<GenParams>& grid,
                          const std::vector<Algorithm>& algorithms, const BenchOptions& options) {
  if (options.runs <= 0) throw std::invalid_argument("runs must be positive");
  if (!(options.timeout_seconds > 0.0)) throw std::invalid_argument("timeout must be positive");
  const auto cap = std::chrono::duration<double>(options.timeout_seconds);

  BenchReport report;
  for (const GenParams& cell : grid) {
    std::vector<Instance> instances;
    for (int k = 0; k < options.runs; ++k) {
      GenParams p = cell;
      p.seed = cell.seed + static_cast<std::uint64_t>(k);
      instances.push_back(generate_instance(p));
    }
    for (Algorithm algorithm : algorithms) {
      BenchRow row{std::string(algorithm_name(algorithm)), cell.n, cell.ranger_budget,
                   cell.villager_budget, options.runs, {}, 0};
      std::vector<double> seconds;
      for (const Instance& instance : instances) {
        const auto start = Clock::now();
        SolveLimits limits{start + std::chrono::duration_cast<Clock::duration>(cap)};
        bool timed_out = false;
        try {
          solve_with(instance, algorithm, options.epsilon, limits);
        } catch (const SolveTimeout&) {
          timed_out = true;
        }
        double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        if (timed_out || elapsed > options.timeout_seconds) {
          elapsed = options.timeout_seconds;
          ++row.timeouts;
        }
        seconds.push_back(elapsed);
      }
      row.stats = summarize_runtimes(std::move(seconds));
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

void write_csv(std::ostream& out, const BenchReport& report) {
  out << "algorithm,n,rp,rv,runs,mean_s,std_s,min_s,p97_s,timeouts\n";
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(17);
  for (const BenchRow& r : report.rows) {
    out << r.algorithm << ',' << r.n << ',' << r.ranger_budget << ',' << r.villager_budget << ','
        << r.runs << ',' << r.stats.mean << ',' << r.stats.stddev << ',' << r.stats.min << ','
        << r.stats.p97 << ',' << r.timeouts << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace racpp
