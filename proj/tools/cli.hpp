#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qumf::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_data = 3;
inline constexpr int exit_guard = 4;

/// Entry point of the `qumf` tool. args[0] is the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qumf::cli
