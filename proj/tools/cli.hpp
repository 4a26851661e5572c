#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lieforge::cli {

// Runs one command line (without the program name). Returns the exit code:
// 0 pass, 1 fail, 2 usage or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lieforge::cli
