#pragma once

// Shared constants for the probit kernels. The Chebyshev table represents
//   g(z) = (1 + 2x) exp(x^2) erfc(x),   z = (x - K) / (x + K),  x >= 0,
// so erfcx(x) = clenshaw(z) / (1 + 2x). Generated by
// scripts/gen_kernel_constants.py (50-digit arithmetic); max relative error
// of the double-precision evaluation over [0, inf) is ~3e-16.

namespace onebit::kernels::detail {

inline constexpr double kErfcxMapK = 3.75;
inline constexpr int kErfcxTerms = 27;
inline constexpr double kErfcxCheb[kErfcxTerms] = {
    1.1775789345674017541,
    -0.0045900545806464773309,
    -0.084249133366517915584,
    0.059209939998191890498,
    -0.026658668435305752277,
    0.0090749976707052650939,
    -0.0024131635404176081909,
    0.00049077583652580863229,
    -0.000069169733025012063671,
    4.1390279860730101675e-6,
    7.7403830661984906686e-7,
    -2.1886401049234395661e-7,
    1.0764999465670910377e-8,
    4.5219598112182868979e-9,
    -7.7544002088313511065e-10,
    -6.3180883408866844944e-11,
    2.8687950109306698981e-11,
    1.945586854577734723e-13,
    -9.6546967484334389059e-13,
    3.2525481481487398415e-14,
    3.3478119482868053878e-14,
    -1.8645628804193131015e-15,
    -1.2507950530688647085e-15,
    7.418235256624043463e-17,
    5.0681489047961113168e-17,
    -2.2370566594359995974e-18,
    -2.187342944303017665e-18,
};

inline constexpr double kLog2E = 1.4426950408889634074;       // 1/ln 2
inline constexpr double kLn2Hi = 6.93147180369123816490e-01;  // high 32 bits of ln 2
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;
inline constexpr double kInvSqrt2 = 0.70710678118654752440;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;  // 1/sqrt(2 pi)
inline constexpr double kSqrt2OverPi = 0.79788456080286535588; // sqrt(2/pi)
inline constexpr double kLnHalf = -0.69314718055994530942;
inline constexpr double kSqrtHalf = 0.70710678118654752440;

// 1/k! for the exp Taylor polynomial, degree 13 (|r| <= ln2/2 after
// reduction; remainder < 5e-18 relative).
inline constexpr double kExpCoeff[14] = {
    1.0,
    1.0,
    0.5,
    1.6666666666666666667e-1,
    4.1666666666666666667e-2,
    8.3333333333333333333e-3,
    1.3888888888888888889e-3,
    1.9841269841269841270e-4,
    2.4801587301587301587e-5,
    2.7557319223985890653e-6,
    2.7557319223985890653e-7,
    2.5052108385441718775e-8,
    2.0876756987868098979e-9,
    1.6059043836821614599e-10,
};

// 1/(2k+1) for the atanh series of log; w = s^2 <= 0.0295 after reduction.
inline constexpr double kLogCoeff[11] = {
    1.0,
    3.3333333333333333333e-1,
    2.0e-1,
    1.4285714285714285714e-1,
    1.1111111111111111111e-1,
    9.0909090909090909091e-2,
    7.6923076923076923077e-2,
    6.6666666666666666667e-2,
    5.8823529411764705882e-2,
    5.2631578947368421053e-2,
    4.7619047619047619048e-2,
};

// Inputs are clamped to this magnitude before evaluation; the functions
// saturate far earlier, and the clamp keeps x*x and the exp reduction in
// safe integer/exponent ranges for any finite input.
inline constexpr double kArgClamp = 1.0e8;

}  // namespace onebit::kernels::detail
