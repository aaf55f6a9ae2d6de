#pragma once

#include <iosfwd>

namespace cqed::cli {

enum ExitCode : int { kOk = 0, kValidationFailure = 1, kUsageError = 2, kNumericalFailure = 3 };

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cqed::cli
