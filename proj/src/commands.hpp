#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ftbfs::cli {

// Runs one CLI invocation. args[0] is the program name. Returns the exit
// status: 0 on success, 1 on verification failures, 2 on usage or I/O
// errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace ftbfs::cli
