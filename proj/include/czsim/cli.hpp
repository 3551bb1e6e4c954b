#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace czsim::cli {

/// Runs one subcommand. `args` excludes the program name. Tables go to the
/// --out file when given, otherwise to `out`; the one-line summary goes to `out`
/// when a file was written and to `err` otherwise.
///
/// Exit status: 0 success, 1 simulation error, 2 usage or config error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string version();

}  // namespace czsim::cli
