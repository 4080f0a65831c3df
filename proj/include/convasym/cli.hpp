#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace convasym {

// Parses `args` (no program name), dispatches to module operations, writes
// machine-readable output on `out` and diagnostics on `err`.
// Exit status: 0 success, 2 invalid input, 3 numerical failure or resource
// cap, 4 zero-free-line check failed.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace convasym
