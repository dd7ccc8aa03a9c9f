#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace slocal::cli {

/// Parses and executes one invocation; args exclude the program name.
/// Writes the JSON report to `out` (or the --out file) and diagnostics to
/// `err`.  Returns 0 on success, 1 when an assertion or library check
/// fails, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slocal::cli
