#pragma once

#include <ostream>

namespace qnorm::cli {

/// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kRejected = 1;  // verify or transfer-check answered "no"
inline constexpr int kParseError = 2;
inline constexpr int kMathError = 3;
inline constexpr int kInternalError = 4;

/// Runs one command line. The JSON result goes to --out when given and to
/// `out` otherwise; error reports always go to `out`.
int run(int argc, const char* const* argv, std::ostream& out);

}  // namespace qnorm::cli
