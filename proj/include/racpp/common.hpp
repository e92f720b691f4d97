#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace racpp {

// Two attacker utilities closer than this are treated as a tie.
inline constexpr double kUtilityTieTolerance = 1e-9;
// Slack on the ranger budget, in effort units.
inline constexpr double kBudgetTolerance = 1e-9;

class InvalidInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised by evaluate_profile when a profile breaks the budget or sign constraints.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

class EnumerationCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolveTimeout : public std::runtime_error {
 public:
  SolveTimeout() : std::runtime_error("solve exceeded its deadline") {}
};

using Clock = std::chrono::steady_clock;

/// Optional wall-clock deadline checked by the solvers between coarse steps.
struct SolveLimits {
  std::optional<Clock::time_point> deadline;

  void check() const {
    if (deadline && Clock::now() > *deadline) throw SolveTimeout();
  }
};

}  // namespace racpp
