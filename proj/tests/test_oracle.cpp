#include <doctest.h>

#include <cmath>
#include <random>

#include "racpp/oracle.hpp"
#include "racpp/waterfill.hpp"
#include "support.hpp"

using namespace racpp;

namespace {

Instance unit_pair(double ranger_budget, std::int64_t villagers) {
  Instance g = testing::symmetric_pair();
  g.ranger_budget = ranger_budget;
  g.villager_budget = villagers;
  return g;
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("symmetric pair") {
    const SolveResult r = solve_oracle(testing::symmetric_pair());
    CHECK(r.defender_utility == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(r.defender_utility == doctest::Approx(solve_hw(testing::symmetric_pair()).defender_utility));
  }

  TEST_CASE("placement count includes the empty placement") {
    CHECK(placement_count(2, 1) == 3);
    CHECK(placement_count(3, 0) == 1);
    CHECK(placement_count(4, 3) == 35);
    CHECK(solve_oracle(testing::symmetric_pair()).diagnostics.at("placements") == 3);
    CHECK(placement_count(1000, 1000) == UINT64_MAX);
  }

  TEST_CASE("enumeration cap refuses instead of truncating") {
    const Instance g = testing::make({30, 2.0, 10, 1});
    CHECK_THROWS_AS(solve_oracle(g), EnumerationCapExceeded);
    CHECK_THROWS_AS(solve_oracle(testing::symmetric_pair(), 2), EnumerationCapExceeded);
    VillagerSpecificInstance vs{testing::make({4, 0.0, 12, 1}), std::vector<double>(12, 0.1)};
    CHECK_THROWS_AS(solve_oracle_villager_specific(vs), EnumerationCapExceeded);
  }

  TEST_CASE("seeded instance matches the waterfilling solver") {
    const Instance g = testing::make({4, 2.0, 2, 4242});
    CHECK(std::abs(solve_oracle(g).defender_utility - solve_hw(g).defender_utility) <= 1e-6);
  }

  TEST_CASE("optimum dominates sampled valid profiles") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const Instance& g : testing::small_instances(60, 2100)) {
      const double best = solve_oracle(g).defender_utility;
      for (int k = 0; k < 50; ++k) {
        StrategyProfile x = StrategyProfile::zeros(g.size());
        std::vector<double> w(g.size());
        double total = 0.0;
        for (auto& e : w) total += e = unit(rng);
        const double spend = g.ranger_budget * unit(rng);
        for (std::size_t i = 0; i < g.size(); ++i) x.effort[i] = spend * w[i] / total;
        for (std::int64_t v = 0; v < g.villager_budget; ++v) {
          if (unit(rng) < 0.8) ++x.villagers[rng() % g.size()];
        }
        CHECK(evaluate_profile(g, x).defender_utility <= best + 1e-9);
      }
    }
  }

  TEST_CASE("villager-specific partition construction") {
    VillagerSpecificInstance vs{unit_pair(0.0, 4), {0.3, 0.3, 0.4, 0.2}};
    const VillagerSpecificResult r = solve_oracle_villager_specific(vs);
    CHECK(std::abs(r.result.defender_utility - 0.2) <= 1e-9);
    double sums[2] = {0.0, 0.0};
    for (std::size_t k = 0; k < r.assignment.size(); ++k) sums[r.assignment[k]] += vs.villager_eff[k];
    CHECK(std::abs(sums[0] - sums[1]) <= 1e-12);
    CHECK(r.result.diagnostics.at("assignments") == 16);
  }

  TEST_CASE("villager-specific edge cases") {
    const VillagerSpecificResult none = solve_oracle_villager_specific({unit_pair(0.0, 0), {}});
    CHECK(none.result.attacked == 0);
    CHECK(none.result.defender_utility == -1.0);

    const VillagerSpecificResult one = solve_oracle_villager_specific({unit_pair(0.0, 1), {0.5}});
    // Either placement leaves the other target uncovered.
    CHECK(one.result.defender_utility == -1.0);

    CHECK_THROWS_AS(solve_oracle_villager_specific({unit_pair(0.0, 2), {0.5}}), DimensionError);
    CHECK_THROWS_AS(solve_oracle_villager_specific({unit_pair(0.0, 1), {1.5}}), InvalidInstance);
  }

  TEST_CASE("balanced partitions reach the balanced-split utility") {
    // Symmetric unit payoffs, no rangers, total effectiveness below 2: with
    // sums a and b the attacked target has coverage min(a, b), so the optimum
    // is 2 * (S / 2) - 1 = S - 1 whenever an equal split exists.
    const std::vector<std::vector<double>> sets = {
        {0.1, 0.2, 0.3}, {0.25, 0.25}, {0.1, 0.4, 0.2, 0.3}, {0.15, 0.35, 0.2, 0.2, 0.1}};
    for (const auto& e : sets) {
      double total = 0.0;
      for (double x : e) total += x;
      const VillagerSpecificResult r =
          solve_oracle_villager_specific({unit_pair(0.0, static_cast<std::int64_t>(e.size())), e});
      CHECK(r.result.defender_utility == doctest::Approx(total - 1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("forcing every villager out never beats the placement oracle") {
    for (const Instance& g : testing::small_instances(40, 2600)) {
      const VillagerSpecificInstance vs{
          g, std::vector<double>(static_cast<std::size_t>(g.villager_budget), g.villager_effectiveness)};
      const double assigned = solve_oracle_villager_specific(vs).result.defender_utility;
      // Every villager must be placed here, so the optimum can only be lower.
      CHECK(assigned <= solve_oracle(g).defender_utility + 1e-9);
    }
  }

  TEST_CASE("target-specific oracle equals the scalar oracle on uniform values") {
    for (const Instance& g : testing::small_instances(40, 2800)) {
      CHECK(solve_oracle(make_target_specific(g)).defender_utility ==
            doctest::Approx(solve_oracle(g).defender_utility).epsilon(1e-12));
    }
  }
}
