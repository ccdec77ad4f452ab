#pragma once

#include <string>
#include <vector>

namespace flock {

// Entry point behind the flocksim binary. Subcommands: run, compare,
// sweep-seeds. Exit codes: 0 success, 2 configuration error, 3 I/O failure,
// 4 numerical abort (non-finite state).
int cli_main(int argc, const char* const* argv);

// Convenience overload for in-process tests; args excludes the program name.
int cli_main(const std::vector<std::string>& args);

}  // namespace flock
