#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace puzzletext::cli {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kRecordFormatVersion = 1;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// args[0] is the program name. Data goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace puzzletext::cli
