#pragma once

// Generated by tests/oracles/compute_oracles.py (sympy + mpmath).
namespace oracle {
inline constexpr double kIntInvSq2PlusCos = 2.4183991523122904675;
inline constexpr double kLocalPosInfimum = 0.42920367320510338077;
inline constexpr double kLocalNegA = 1.0986122886681096914;
inline constexpr double kLocalNegInfimum = 0.098612288668109691395;
inline constexpr double kBsAffineCurvatureC2 = 16.0;
inline constexpr double kBsAffineCurvatureC2Check = 16.0;
inline constexpr double kYamTau = 1.265625;
inline constexpr double kQextQ = 1.0;
inline constexpr double kQextQCheck = 0.99999999999999877875;
inline constexpr double kQextK = 1.0;
inline constexpr double kQextTau = 0.5625;
inline constexpr double kQextSymQAt0 = 90.0625;
inline constexpr double kQextSymQAtPi = 0.102783203125;
inline constexpr double kGreensConstant = 0.66666666666666666667;
inline constexpr double kFsymqConjLambda2 = 14026.909108896350962;
inline constexpr double kFourierLhsCos2 = 3.7404587531803475745;
inline constexpr double kFourierRhsCos2 = 3.6599554414321091228;
}  // namespace oracle
