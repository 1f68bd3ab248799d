#pragma once

#include <iosfwd>

namespace pseudoherm::cli {

/// Exit codes: 0 success, 1 verification failure, 2 input or usage error.
enum Exit : int { kOk = 0, kVerificationFailed = 1, kInputError = 2 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pseudoherm::cli
