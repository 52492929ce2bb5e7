#pragma once

#include <string>
#include <vector>

namespace homent::cli {

// Entry point shared by the binary and the tests.  Returns the process
// exit code: 0 success, 1 usage or input error, 2 failed property check.
int run(std::vector<std::string> args);

}  // namespace homent::cli
