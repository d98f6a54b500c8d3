#pragma once

#include <ostream>

namespace swp::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kViolation = 2;
inline constexpr int kUnsupported = 3;

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace swp::cli
