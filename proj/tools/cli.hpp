#pragma once

#include <iosfwd>

namespace ringdecomp::cli {

/// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;       // verification or self-test failure
inline constexpr int kBadInput = 2;     // parse, shape or ring mismatch
inline constexpr int kUnsupported = 3;  // (ring, kind) out of scope
inline constexpr int kAmbiguous = 4;    // cluster ambiguity

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ringdecomp::cli
