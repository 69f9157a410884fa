#ifndef AFFAUTO_TOOLS_CLI_HPP_
#define AFFAUTO_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace affauto::cli {

  // Process exit codes.
  enum ExitCode : int {
    kOk             = 0,
    kInternal       = 1,
    kInvalidInput   = 2,
    kCapExceeded    = 3,
    kBudgetExceeded = 4,
    kMismatch       = 5,
  };

  // Runs the command line `args` (without the program name).
  int run(std::vector<std::string> const& args, std::ostream& out,
          std::ostream& err);

}  // namespace affauto::cli

#endif  // AFFAUTO_TOOLS_CLI_HPP_
