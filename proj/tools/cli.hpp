#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shocknet::cli {

/// Exit codes: 0 success, 1 usage or validation error, 2 numeric failure
/// (underflow, enumeration limit, disagreeing representations).
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumeric = 2;

/// Runs one command line (args excludes the program name). Results go to
/// `out` unless -o is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shocknet::cli
