#pragma once

// Numerical constants of the nonexistence argument, as decimal literals so they
// can be enclosed exactly at any precision.
namespace d4::k {

// Gap principle index lower bounds: l > 0.499997 sqrt(ac), j > m > 0.333331 sqrt(ac), h > 0.666662 sqrt(ac).
inline constexpr const char* kIndexL = "0.499997";
inline constexpr const char* kIndexM = "0.333331";
inline constexpr const char* kIndexH = "0.666662";

// c < 237.952 b^3 / a
inline constexpr const char* kCUpper = "237.952";
// Rickert applicability: N >= 59.488 A' B^2 (B-A)^2 g^-4
inline constexpr const char* kRickertN = "59.488";
// log alpha2 < 3.4753 log alpha1
inline constexpr const char* kLogRatio = "3.4753";
// m >= 0.618034 sqrt(d/b) and n > 0.309017 sqrt(d/b), imported from the earlier D(4)-quadruple work.
inline constexpr const char* kGolden = "0.618034";
inline constexpr const char* kHalfGolden = "0.309017";

// Lower bound b > 10^5 and h > 210.81 for c > 10^5.
inline constexpr const char* kBMin = "100000";
inline constexpr const char* kHMinC = "210.81";

// Aleksentsev stage constant.
inline constexpr const char* kAleksentsev = "6.005175e11";

// Mignotte stage: height slack and the a3 coefficient slope.
inline constexpr const char* kHeightSlack = "6.7e-10";
inline constexpr const char* kA3Slope = "0.08675";
inline constexpr const char* kLog136 = "1.36";

// Laurent stage in the (A2) case.
inline constexpr const char* kGamma1Log = "0.694";
inline constexpr const char* kHprimeConst = "7.06";
inline constexpr const char* kC3Slack = "1.001";
inline constexpr const char* kC3Tail = "3e-4";

// Final ceilings used by the searches.
inline constexpr const char* kAcMax = "1.17732e28";
inline constexpr const char* kHMax = "7.23357e13";
inline constexpr const char* kHCoeff = "3.46289e10";
inline constexpr const char* kRegularX = "1.57493e13";
inline constexpr const char* kRegularH = "1.85682e13";

// Degree-one search: b > 18.0793 a^{3/2}, ab < 1.23033e14.
inline constexpr const char* kDeg1Slope = "18.0793";
inline constexpr const char* kDeg1AbMax = "1.23033e14";

// Regular-case Laurent instantiation.
inline constexpr const char* kRegA2Base = "1.264";
inline constexpr const char* kRegBprimeA = "0.742116";
inline constexpr const char* kRegBprimeB = "4.187";
inline constexpr const char* kRegBprimeC = "0.0213";
inline constexpr const char* kRegBprimeShift = "0.018";

}  // namespace d4::k
