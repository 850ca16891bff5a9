#pragma once

#include <string_view>

namespace burgess::constants {

// Canonical 40-digit sources. The double/long double values below are
// rounded from these; the high-precision mode parses the strings.
inline constexpr std::string_view kEulerGammaDigits =
    "0.5772156649015328606065120900824024310422";
inline constexpr std::string_view kLn10Digits =
    "2.302585092994045684017991454684364207601";
inline constexpr std::string_view kSqrt10Digits =
    "3.162277660168379331998893544432718533720";

inline constexpr long double kEulerGamma =
    0.5772156649015328606065120900824024310422L;
inline constexpr long double kLn10 = 2.302585092994045684017991454684364207601L;
inline constexpr long double kSqrt10 =
    3.162277660168379331998893544432718533720L;

// Explicit constants of the composite-modulus Burgess bound.
inline constexpr double kTheoremConstant = 9.07;
inline constexpr double kCorollaryConstant = 12.11;
inline constexpr double kCorollaryShift = 1.69;
inline constexpr double kLambdaConstant = 3.3325;
inline constexpr double kLogLogThreshold = 9.594;

// Appendix bounds for phi, d and omega.
inline constexpr double kPhiShift = 3.0;
inline constexpr double kDivisorExponent = 1.066;
inline constexpr double kOmegaCoefficient = 1.45743;

// Internal constants used by the constant chain.
inline constexpr double kLambdaSlack = 1.0001;
inline constexpr double kHolderSquareFactor = 30.0;

}  // namespace burgess::constants
