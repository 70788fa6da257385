#pragma once

#include <string>
#include <vector>

namespace vcbsp::cli {

// Runs the command-line tool on argv[1..]. Returns the process exit code:
// 0 success, 1 runtime failure, 2 usage error.
int run(const std::vector<std::string>& args);

}  // namespace vcbsp::cli
