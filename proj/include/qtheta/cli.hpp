#ifndef QTHETA_CLI_HPP
#define QTHETA_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace qtheta
{

// Exit codes of the command-line front end.
enum ExitCode { kExitPass = 0, kExitMismatch = 1, kExitUsage = 2, kExitError = 3 };

/// Runs the `qtheta` command line (list, check, expand, oracle) with
/// args[0] as the program name. Returns the process exit code.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace qtheta

#endif
