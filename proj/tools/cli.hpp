#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace scg::cli {

/// Exit codes: 0 success / equal, 1 semantic mismatch or violation, 2 usage
/// or parse error. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace scg::cli
