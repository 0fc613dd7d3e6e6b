#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tracelab {

// Command-line front end.  `args` excludes the program name.  Returns the
// process exit code: 0 success, 2 invalid input, 3 numerical failure,
// 4 verification failure.
int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err);

}  // namespace tracelab
