#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace clab::cli {

/// Runs one command line (without the program name). Returns the exit code:
/// 0 affirmative or exhausted, 1 negative or counterexample, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace clab::cli
