#pragma once
// Command-line front end for the engine.  Exposed as a library so the test
// suite can drive commands in-process.
//
// Exit codes: 0 success, 1 check failure, 2 usage/config error.

#include <iosfwd>
#include <string>
#include <vector>

namespace ccasc::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ccasc::cli
