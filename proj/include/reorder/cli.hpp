#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace reorder::cli {

/// Runs the command line given as argv-style tokens (program name excluded).
/// Returns the process exit code: 0 success, 1 usage/config error, 2 data
/// error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace reorder::cli
