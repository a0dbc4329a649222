#ifndef STOCHMATCH_CLI_HPP
#define STOCHMATCH_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace stochmatch::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `stochmatch` tool; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stochmatch::cli

#endif  // STOCHMATCH_CLI_HPP
