#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stylomech::cli {

/// Runs one command line (`args[0]` is the program name). Exit codes: 0 on
/// success, 1 on a usage error, 2 when the library reports an error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stylomech::cli
