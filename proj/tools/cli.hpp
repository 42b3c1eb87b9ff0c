#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dyadnet::cli {

// Parses and executes one CLI invocation. The result document goes to
// `out` (or the --out file); diagnostics go to `err`.
// Exit codes: 0 success, 1 parameter/usage error, 2 verify found a mismatch.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dyadnet::cli
