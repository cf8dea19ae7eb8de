#pragma once

#include <string>
#include <vector>

namespace gstab::cli {

// Exit codes, stable for scripting.
inline constexpr int kExitOk = 0;       // success; tester verdict "close"
inline constexpr int kExitUsage = 2;    // bad arguments, malformed file, bad config
inline constexpr int kExitFar = 3;      // tester verdict "far"
inline constexpr int kExitCap = 4;      // size cap exceeded

/// Runs one command (args exclude the program name). Everything the binary
/// does goes through here so tests can drive commands in-process.
int run(const std::vector<std::string>& args);

} // namespace gstab::cli
