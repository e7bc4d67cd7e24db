#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mtlearn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // a cell failed, or an operation raised
inline constexpr int kExitConfig = 2;   // bad flags, subcommand or manifest

/// Entry point of the `mtlearn` tool. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mtlearn::cli
