#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace agentnet {

/// Runs one CLI invocation. `args` excludes the program name. Returns the
/// process exit code: 0 on success, 1 on a property violation (e.g. a dead
/// transition under --fail-on-dead, a failed isomorphism check), 2 on input
/// or usage errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace agentnet
