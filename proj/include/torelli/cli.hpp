#ifndef TORELLI_CLI_HPP
#define TORELLI_CLI_HPP

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace torelli::cli {

/// Bad command-line input (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

/// Runs one command. args excludes the program name. Reports go to out,
/// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace torelli::cli

#endif
