#ifndef EXPTOWER_CLI_APP_HPP
#define EXPTOWER_CLI_APP_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace exptower::cli {

// Exit codes, so scripts can branch on the kind of outcome:
//   0 success with a positive (or neutral) result
//   2 usage error: bad flags, bad word/number syntax, bad format choice
//   3 domain error: the request is well-formed but mathematically out of
//     range (atlas beyond 1/e, cycle at or below e, ...)
//   4 the computation succeeded but its verdict is negative (failed
//     certificate, round trip not represented, undetermined classification,
//     membership miss, self-test failure)
inline constexpr int k_exit_ok = 0;
inline constexpr int k_exit_usage = 2;
inline constexpr int k_exit_domain = 3;
inline constexpr int k_exit_negative = 4;

// Runs one invocation.  args excludes the program name.  The report goes to
// out, error messages to err; the returned value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace exptower::cli

#endif
