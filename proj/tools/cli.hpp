// Command-line front end.  run_cli is the whole program minus process
// scaffolding so tests can invoke subcommands in-process.
//
// Exit codes: 0 success, 2 usage error, 3 data error, 4 non-convergence.
#pragma once

#include <iosfwd>

namespace mcmpb::cli {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mcmpb::cli
