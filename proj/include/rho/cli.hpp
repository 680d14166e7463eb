#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rho::cli {

// Executes one subcommand. Exit codes: 0 success, 1 domain error (with a
// diagnostic report), 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rho::cli
