#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace nudd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumericalFault = 1;
inline constexpr int kExitUsage = 2;

/// Runs one invocation. `args` excludes the program name. Results go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "5", "1,2,5", "1..10" or "1:10". Throws std::invalid_argument.
std::vector<int> parse_int_list(std::string_view text);

/// Same syntax with real values; ranges are not accepted.
std::vector<double> parse_real_list(std::string_view text);

}  // namespace nudd::cli
