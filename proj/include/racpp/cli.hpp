#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace racpp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

/// Runs one planner command. `args` excludes the program name. Returns 0 on
/// success, 1 when the input or a produced profile fails validation, 2 on
/// usage errors (after printing the flag table to `err`).
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace racpp
