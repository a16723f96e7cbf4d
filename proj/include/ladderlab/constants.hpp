#pragma once

namespace ladderlab {

// Euler's constant to 20 digits; 1 - c is the universal increment slope.
inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kOneMinusGamma = 0.42278433509846713939;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647693;
inline constexpr double kLnTwoPi = 1.83787706640934548356;

}  // namespace ladderlab
