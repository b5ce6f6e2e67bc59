#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace divsmooth::cli {

/// Runs the divsmooth command line on args (args[0] is the program name).
/// Documents go to out, usage text and diagnostics to err. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace divsmooth::cli
