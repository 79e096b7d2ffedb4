#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fvl::cli {

// Exit codes: 0 YES / valid / success, 1 NO / invalid, 2 UNKNOWN (budget),
// 3 input or usage error.
enum ExitCode { kYes = 0, kNo = 1, kUnknown = 2, kInputError = 3 };

// args[0] is the program name. The report goes to `out` (or --output);
// usage errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace fvl::cli
