#pragma once

// Backend-generic bodies of the probit kernels. V is a lane type (see
// vec_scalar.hpp / vec_avx2.hpp) exposing correctly rounded add/sub/mul/div
// plus fused multiply-add, bit manipulation and lane blending. Both backends
// execute the identical operation sequence, which is what makes their
// elementwise results bit-identical.

#include "probit_constants.hpp"

namespace onebit::kernels::detail {

// exp(x) for x in [-kArgClamp^2, 709]; underflows to 0, no NaNs.
template <class V>
inline V vexp(V x) {
    x = V::max(x, V::broadcast(-746.0));
    x = V::min(x, V::broadcast(710.0));
    const V kd = V::rint(x * V::broadcast(kLog2E));
    V r = V::fnma(kd, V::broadcast(kLn2Hi), x);  // x - kd*ln2_hi (exact)
    r = V::fnma(kd, V::broadcast(kLn2Lo), r);
    V p = V::broadcast(kExpCoeff[13]);
    for (int k = 12; k >= 0; --k) p = V::fma(p, r, V::broadcast(kExpCoeff[k]));
    // scale by 2^k in two steps so the subnormal range is reached gracefully
    const auto k = V::to_int(kd);                       // |k| <= 1076
    const auto hi = V::shift_right_halved(k);           // floor(k/2)
    const auto lo = V::int_sub(k, hi);
    p = p * V::pow2(hi);
    return p * V::pow2(lo);
}

// log(x) for normal positive x.
template <class V>
inline V vlog(V x) {
    auto bits = V::to_bits(x);
    auto ke = V::exponent_of(bits);                     // unbiased exponent
    V m = V::mantissa_to_unit(bits);                    // [1, 2)
    const auto big = V::cmp_gt(m, V::broadcast(1.4142135623730951));
    m = V::blend(big, m * V::broadcast(0.5), m);
    V kd = V::int_to_double(ke) + V::blend(big, V::broadcast(1.0), V::broadcast(0.0));
    const V s = (m - V::broadcast(1.0)) / (m + V::broadcast(1.0));
    const V w = s * s;
    V q = V::broadcast(kLogCoeff[10]);
    for (int k = 9; k >= 0; --k) q = V::fma(q, w, V::broadcast(kLogCoeff[k]));
    const V r = V::fma(kd, V::broadcast(kLn2Lo), (s + s) * q);
    return V::fma(kd, V::broadcast(kLn2Hi), r);
}

// log(1+u) for u in (-1, 1]; first-order correction recovers the bits the
// rounding of 1+u discards.
template <class V>
inline V vlog1p(V u) {
    const V w = V::broadcast(1.0) + u;
    const V corr = (u - (w - V::broadcast(1.0))) / w;
    return vlog(w) + corr;
}

// erfcx(s) for s >= 0 via Clenshaw on the mapped variable.
template <class V>
inline V verfcx(V s) {
    const V k = V::broadcast(kErfcxMapK);
    const V z = (s - k) / (s + k);
    const V two_z = z + z;
    V b1 = V::broadcast(0.0);
    V b2 = V::broadcast(0.0);
    for (int i = kErfcxTerms - 1; i >= 1; --i) {
        const V nb1 = V::fma(two_z, b1, V::broadcast(kErfcxCheb[i]) - b2);
        b2 = b1;
        b1 = nb1;
    }
    const V g = V::fma(z, b1, V::broadcast(kErfcxCheb[0]) - b2);
    return g / V::fma(V::broadcast(2.0), s, V::broadcast(1.0));
}

template <class V>
struct HalfSquare {
    V s;    // |x|/sqrt(2), the erfcx argument (erfcx is flat enough that the
            // constant's rounding is immaterial here)
    V s2;   // x^2/2 = 0.5*(x*x), halving exact
    V s2e;  // 0.5 * exact squaring residual, so s2 + s2e == x^2/2 exactly
    V ecx;  // erfcx(s)
    V eneg; // exp(-x^2/2) with the residual folded in
    typename V::Mask nonneg;
};

template <class V>
inline HalfSquare<V> probit_prepare(V x) {
    x = V::max(x, V::broadcast(-kArgClamp));
    x = V::min(x, V::broadcast(kArgClamp));
    HalfSquare<V> h;
    h.nonneg = V::cmp_ge(x, V::broadcast(0.0));
    h.s = V::abs(x) * V::broadcast(kInvSqrt2);
    const V x2 = x * x;
    const V x2e = V::fma(x, x, V::broadcast(0.0) - x2);
    h.s2 = V::broadcast(0.5) * x2;
    h.s2e = V::broadcast(0.5) * x2e;
    h.ecx = verfcx(h.s);
    V e = vexp(V::broadcast(0.0) - h.s2);
    h.eneg = V::fnma(e, h.s2e, e);  // e * (1 - s2e)
    return h;
}

// log Phi(x)
template <class V>
inline V vlogphi(V x) {
    const HalfSquare<V> h = probit_prepare(x);
    const V tail = V::broadcast(0.5) * h.eneg * h.ecx;  // Phi(-|x|)
    const V pos = vlog1p(V::broadcast(0.0) - tail);
    const V neg = (vlog(V::broadcast(0.5) * h.ecx) - h.s2) - h.s2e;
    return V::blend(h.nonneg, pos, neg);
}

// phi(x) / Phi(x). For x < 0 the exp factor cancels exactly:
// lambda = sqrt(2/pi) / erfcx(|x|/sqrt(2)).
template <class V>
inline V vinvmills(V x) {
    const HalfSquare<V> h = probit_prepare(x);
    const V neg = V::broadcast(kSqrt2OverPi) / h.ecx;
    const V denom = V::fnma(V::broadcast(0.5) * h.eneg, h.ecx, V::broadcast(1.0));
    const V pos = (h.eneg * V::broadcast(kInvSqrt2Pi)) / denom;
    return V::blend(h.nonneg, pos, neg);
}

// Phi(x)
template <class V>
inline V vnormcdf(V x) {
    const HalfSquare<V> h = probit_prepare(x);
    const V tail = V::broadcast(0.5) * h.eneg * h.ecx;
    return V::blend(h.nonneg, V::broadcast(1.0) - tail, tail);
}

// Rotated probit arguments for one lane-group of a column.
template <class V>
struct RotatedArgs {
    V t_re;
    V t_im;
};

template <class V>
inline RotatedArgs<V> rotate_args(V xr, V xi, V yr, V yi, V c, V s, V inv_sigma) {
    const V u = V::fnma(xi, s, xr * c);  // xr*c - xi*s
    const V w = V::fma(xr, s, xi * c);   // xr*s + xi*c
    RotatedArgs<V> out;
    out.t_re = (yr * u) * inv_sigma;
    out.t_im = (yi * w) * inv_sigma;
    return out;
}

}  // namespace onebit::kernels::detail
