#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cecp {

/// Entry point of the `cecp` command line tool. `args` excludes the program
/// name. Returns the process exit code; failures print a one-line JSON
/// error object to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cecp
