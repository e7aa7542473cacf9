#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace maxtype::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFail = 2;

/// Runs one command. `args` excludes the program name. Returns 0 when every
/// asserted bound holds, 2 when one fails and 1 on a usage or parameter error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace maxtype::cli
