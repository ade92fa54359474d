#ifndef MSCS_CLI_HPP
#define MSCS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace mscs {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  exit_ok = 0,
  exit_verification_failed = 1,
  exit_usage = 2,
};

/// Runs `mscs <args...>`; args excludes the program name.
int run_cli(std::vector<std::string> const& args, std::ostream& out,
            std::ostream& err);

} // namespace mscs

#endif
