#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace varcalc {

/// Runs one CLI invocation (argv without the program name).
/// Exit codes: 0 success (including is_hamiltonian == false), 2 parse or
/// command-line error, 3 precondition violation, 4 internal error.
int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

} // namespace varcalc
