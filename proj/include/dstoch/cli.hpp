#ifndef DSTOCH_CLI_HPP_
#define DSTOCH_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace dstoch {

// Exit codes: 0 success, 1 mathematical negative (not domestic, not majorized,
// non-convergent, core mismatch), 2 input error, 3 budget exceeded.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitBudget = 3;

// Runs the whole command line (without the program name). Reports go to out,
// CLI11 usage errors to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dstoch

#endif  // DSTOCH_CLI_HPP_
