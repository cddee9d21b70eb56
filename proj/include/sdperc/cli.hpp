#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sdperc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

// Runs one sdperc command line (without the program name). CSV goes to `out`
// unless --out names a file; progress and the one-line error record go to
// `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sdperc::cli
