#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aterm::cli {

/// Process exit codes.
enum Exit : int { ok = 0, verify_failed = 1, usage = 2, budget = 3, domain = 4 };

/// Runs the `aterm` command line. Reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience for tests: args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aterm::cli
