#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace evlogic {

/// Runs the command-line tool on `args` (without the program name).
/// Exit status: 0 success, 1 rejected proof / false verdict / failed check,
/// 2 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace evlogic
