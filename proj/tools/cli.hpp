#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace anyonqi::cli {

// Runs one command line (program name excluded). Returns the process exit
// code: 0 success, 1 domain or validation error, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace anyonqi::cli
