#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mrc::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapacity = 3;

struct CommandResult {
  int exit_code = kExitPass;
  std::string out;  // payload (JSON with --json, otherwise a table)
  std::string err;  // diagnostics
};

// Runs one command line (without the program name). Never throws.
CommandResult run(const std::vector<std::string>& args);

// "2,2,3" -> {2, 2, 3}; throws Error(InvalidSpec) on anything else.
std::vector<std::int64_t> parse_degree_list(std::string_view text);

}  // namespace mrc::cli
