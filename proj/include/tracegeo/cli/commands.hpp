#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tracegeo::cli {

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns the process exit code: 0 success, 2 when classify
/// finds no arc, 1 on any error (reported as JSON on `err`).
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace tracegeo::cli
