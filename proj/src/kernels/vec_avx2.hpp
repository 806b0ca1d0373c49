#pragma once

// AVX2 lane type (4 doubles) for probit_math.hpp. Requires -mavx2 -mfma.

#include <immintrin.h>

#include <cstdint>

namespace onebit::kernels::detail {

struct VecAvx2 {
    __m256d v;

    using Mask = __m256d;    // all-ones / all-zeros lanes from _mm256_cmp_pd
    using Int = __m256i;     // 4 x int64

    static constexpr int width = 4;

    static VecAvx2 broadcast(double x) { return {_mm256_set1_pd(x)}; }
    static VecAvx2 load(const double* p) { return {_mm256_loadu_pd(p)}; }
    void store(double* p) const { _mm256_storeu_pd(p, v); }

    friend VecAvx2 operator+(VecAvx2 a, VecAvx2 b) { return {_mm256_add_pd(a.v, b.v)}; }
    friend VecAvx2 operator-(VecAvx2 a, VecAvx2 b) { return {_mm256_sub_pd(a.v, b.v)}; }
    friend VecAvx2 operator*(VecAvx2 a, VecAvx2 b) { return {_mm256_mul_pd(a.v, b.v)}; }
    friend VecAvx2 operator/(VecAvx2 a, VecAvx2 b) { return {_mm256_div_pd(a.v, b.v)}; }

    static VecAvx2 fma(VecAvx2 a, VecAvx2 b, VecAvx2 c) { return {_mm256_fmadd_pd(a.v, b.v, c.v)}; }
    static VecAvx2 fnma(VecAvx2 a, VecAvx2 b, VecAvx2 c) { return {_mm256_fnmadd_pd(a.v, b.v, c.v)}; }
    static VecAvx2 max(VecAvx2 a, VecAvx2 b) { return {_mm256_max_pd(a.v, b.v)}; }
    static VecAvx2 min(VecAvx2 a, VecAvx2 b) { return {_mm256_min_pd(a.v, b.v)}; }
    static VecAvx2 abs(VecAvx2 a) {
        return {_mm256_andnot_pd(_mm256_set1_pd(-0.0), a.v)};
    }
    static VecAvx2 rint(VecAvx2 a) {
        return {_mm256_round_pd(a.v, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC)};
    }

    static Mask cmp_ge(VecAvx2 a, VecAvx2 b) { return _mm256_cmp_pd(a.v, b.v, _CMP_GE_OQ); }
    static Mask cmp_gt(VecAvx2 a, VecAvx2 b) { return _mm256_cmp_pd(a.v, b.v, _CMP_GT_OQ); }
    static VecAvx2 blend(Mask m, VecAvx2 if_true, VecAvx2 if_false) {
        return {_mm256_blendv_pd(if_false.v, if_true.v, m)};
    }

    static Int to_bits(VecAvx2 a) { return _mm256_castpd_si256(a.v); }
    static Int exponent_of(Int bits) {
        return _mm256_sub_epi64(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(1023));
    }
    static VecAvx2 mantissa_to_unit(Int bits) {
        const Int m = _mm256_or_si256(
            _mm256_and_si256(bits, _mm256_set1_epi64x(0x000fffffffffffffll)),
            _mm256_set1_epi64x(0x3ff0000000000000ll));
        return {_mm256_castsi256_pd(m)};
    }
    // int64 -> double for |k| < 2^51, via the 2^52*1.5 magic constant
    static VecAvx2 int_to_double(Int k) {
        const Int magic = _mm256_set1_epi64x(0x4338000000000000ll);
        const __m256d shifted = _mm256_castsi256_pd(_mm256_add_epi64(k, magic));
        return {_mm256_sub_pd(shifted, _mm256_set1_pd(6755399441055744.0))};
    }
    // double (integral value, |a| < 2^51) -> int64 by the same trick
    static Int to_int(VecAvx2 a) {
        const __m256d shifted = _mm256_add_pd(a.v, _mm256_set1_pd(6755399441055744.0));
        return _mm256_sub_epi64(_mm256_castpd_si256(shifted),
                                _mm256_set1_epi64x(0x4338000000000000ll));
    }
    // floor(k/2) for k in [-2048, 2047]; AVX2 lacks 64-bit arithmetic shift,
    // so bias into the non-negative range first.
    static Int shift_right_halved(Int k) {
        const Int biased = _mm256_add_epi64(k, _mm256_set1_epi64x(2048));
        return _mm256_sub_epi64(_mm256_srli_epi64(biased, 1), _mm256_set1_epi64x(1024));
    }
    static Int int_sub(Int a, Int b) { return _mm256_sub_epi64(a, b); }
    static VecAvx2 pow2(Int m) {
        const Int bits = _mm256_slli_epi64(_mm256_add_epi64(m, _mm256_set1_epi64x(1023)), 52);
        return {_mm256_castsi256_pd(bits)};
    }

    // fixed-order horizontal sum: (l0 + l1) + (l2 + l3)
    double hsum() const {
        const __m128d lo = _mm256_castpd256_pd128(v);
        const __m128d hi = _mm256_extractf128_pd(v, 1);
        const __m128d pair = _mm_add_pd(lo, hi);  // (l0+l2, l1+l3)
        return _mm_cvtsd_f64(pair) + _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
    }
};

}  // namespace onebit::kernels::detail
