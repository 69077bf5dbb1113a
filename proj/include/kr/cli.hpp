#pragma once
// The krh command line. Exit codes: 0 success, 1 verification failed,
// 2 invalid input, 3 resource guard.

#include <iosfwd>
#include <string>
#include <vector>

namespace kr {

enum ExitCode { kExitOk = 0, kExitFailed = 1, kExitInvalid = 2, kExitGuard = 3 };

// args excludes the program name
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kr
