#ifndef CLEARNET_TOOLS_CLI_HPP
#define CLEARNET_TOOLS_CLI_HPP

#include <iosfwd>

namespace clearnet::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kVerifyFailed = 2;
inline constexpr int kPreconditionViolated = 3;

/// Entry point of the `clearnet` command. Reports go to `out` as JSON (or a
/// table with --pretty); diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace clearnet::cli

#endif  // CLEARNET_TOOLS_CLI_HPP
