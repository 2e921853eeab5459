#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qtgi {

/// Exit codes of the qtgi command line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailed = 1,  // verification failure or a non-existent inverse
  kExitUsage = 2,   // usage, IO or parse error
};

/// Entry point of the `qtgi` tool. `args` excludes the program name.
/// Reports go to `out`, diagnostics to `err`; tensors only to files.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qtgi
