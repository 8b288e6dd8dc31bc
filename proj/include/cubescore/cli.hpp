#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cubescore::cli {

/// Exit codes: 0 success, 1 internal assertion failure, 2 usage or
/// precondition error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (args[0] is the program name). The JSON result or
/// diagnostic goes to `out`; usage text goes to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cubescore::cli
