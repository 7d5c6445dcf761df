#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coinwalk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;     // I/O and other runtime failures
inline constexpr int kExitValidation = 2;  // invalid parameters or coin states
inline constexpr int kExitConvergence = 3;
inline constexpr int kExitUsage = 64;

// Entry point behind the coinwalk binary. `args` excludes the program name.
// Results go to `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coinwalk::cli
