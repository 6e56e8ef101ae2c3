#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hjwave::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_numerical_error = 3;

/// Runs one experiment. `args` excludes the program name.
/// Returns 0 on success, 2 on configuration errors, 3 on numerical failures.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

} // namespace hjwave::cli
