#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace genss::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitVerify = 2;

/// Entry point behind the genss binary. args excludes the program name.
/// Returns kExitOk, kExitInput (bad flags, parse or math errors) or
/// kExitVerify (an oracle sweep did not pass).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace genss::cli
