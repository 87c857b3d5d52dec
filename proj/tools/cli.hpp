#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sortsupport::cli {

enum ExitCode : int {
	exit_ok = 0,
	exit_no = 1, // NO verdict, failed check, or mismatch
	exit_input = 2,
	exit_unfixable = 3,
	exit_limit = 4,
};

/// Runs the command line `args` (without the program name), writing to the
/// given streams instead of the process's. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sortsupport::cli
