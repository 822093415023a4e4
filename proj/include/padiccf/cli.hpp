#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace padiccf {

/// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInvariant = 3;

/// Runs one subcommand; args exclude the program name. Results go to `out`
/// (or the --output file), diagnostics and usage to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace padiccf
