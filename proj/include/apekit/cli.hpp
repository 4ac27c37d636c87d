#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace apekit {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitData = 2;

/// Runs the apekit command line. Reports go to `out` unless an output path
/// is given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);

}  // namespace apekit
