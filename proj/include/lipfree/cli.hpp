#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lipfree::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int predicate_false = 1;
inline constexpr int error = 2;
inline constexpr int usage = 64;
inline constexpr int io = 66;
} // namespace exit_code

/// Runs one subcommand. `args` excludes the program name. The JSON report
/// goes to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Names accepted by `demo`.
std::vector<std::string> demo_names();

} // namespace lipfree::cli
