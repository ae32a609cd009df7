#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace treebed::cli {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kUsage = 2,
    kResourceLimit = 3,
};

/// Entry point of the `treebed` tool. argv[0] is the program name.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace treebed::cli
