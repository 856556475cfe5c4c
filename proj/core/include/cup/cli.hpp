#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cup::cli {

/// Command dispatch for the `cup` tool. `args` excludes the executable name.
/// Exit codes: 0 success, 1 search/check failure, 2 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cup::cli
