#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stablepgf::cli {

/// Runs one CLI invocation; `args` excludes the program name. Reports are
/// written to `out` (or to --out when given); diagnostics go to `err`.
/// Exit codes: 0 success / affirmative verdict, 1 negative verdict,
/// 2 input or format error, 3 internal numerical failure.
int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace stablepgf::cli
