#pragma once

#include <string_view>

// Known witness words used as checker fixtures, in the solver output
// format (1-based letters).
namespace avoid::fixtures {

// length 30, sigma 4, avoids x1x2x2x1r
inline constexpr std::string_view kReversal30 =
    "[1, 2, 3, 1, 4, 1, 4, 1, 2, 3, 1, 4, 1, 2, 3, 1, 2, 3, 1, 4, 1, 4, 1, 2, 3, 1, 2, 3, 1, 4]";

// length 50, sigma 3, avoids Zimin-3 = x1x2x1x3x1x2x1
inline constexpr std::string_view kZimin50 =
    "[1, 1, 1, 1, 1, 1, 2, 1, 1, 2, 1, 1, 2, 2, 1, 1, 3, 1, 1, 2, 2, 2, 1, 1, 3, 2, 1, 1, 3, 2, "
    "1, 1, 3, 3, 1, 1, 2, 2, 3, 1, 1, 2, 2, 3, 1, 1, 2, 3, 1, 1]";

// length 33, sigma 5, avoids xx in the abelian sense
inline constexpr std::string_view kAbelian33 =
    "[1, 2, 1, 3, 1, 2, 1, 4, 1, 3, 2, 3, 4, 1, 4, 2, 3, 2, 1, 4, 1, 2, 1, 3, 1, 2, 1, 4, 2, 3, "
    "2, 1, 4]";

// length 54, sigma 4, avoids {x1x1, x1p1(x1)x1r} under permutations
inline constexpr std::string_view kPerm54 =
    "[1, 2, 3, 1, 4, 2, 1, 4, 3, 2, 4, 3, 1, 4, 3, 2, 1, 3, 2, 4, 1, 2, 4, 3, 1, 2, 3, 1, 4, 2, "
    "1, 4, 3, 2, 1, 3, 2, 4, 1, 2, 4, 3, 1, 4, 3, 2, 4, 3, 1, 2, 3, 1, 4, 2]";

// length 36, sigma 3, avoids xp^5(x)p^12(x) under permutations
inline constexpr std::string_view kPerm36 =
    "[1, 1, 2, 2, 1, 3, 2, 1, 3, 2, 2, 3, 1, 2, 2, 1, 3, 3, 2, 2, 3, 1, 2, 2, 1, 3, 3, 1, 1, 2, "
    "2, 1, 3, 2, 1, 3]";

// length 120, sigma 3, avoids x1x2x2x1r
inline constexpr std::string_view kReversal120 =
    "[1, 1, 1, 2, 1, 1, 1, 2, 1, 2, 2, 2, 1, 1, 1, 2, 1, 1, 1, 3, 1, 1, 1, 2, 1, 1, 1, 2, 1, 2, "
    "2, 2, 1, 1, 1, 2, 1, 1, 1, 3, 1, 2, 1, 1, 1, 2, 1, 1, 1, 2, 1, 2, 2, 2, 1, 1, 1, 2, 1, 1, "
    "1, 3, 1, 1, 1, 2, 1, 1, 1, 2, 1, 2, 2, 2, 1, 1, 1, 2, 1, 1, 1, 3, 1, 2, 1, 2, 1, 2, 1, 2, "
    "1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2]";

// length 12, sigma 3, morphic image of 01101 with image lengths (3, 2)
inline constexpr std::string_view kMorphic12 = "[1, 1, 2, 2, 3, 2, 3, 1, 1, 2, 2, 3]";

}  // namespace avoid::fixtures
