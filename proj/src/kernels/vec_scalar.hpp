#pragma once

// Scalar lane type for probit_math.hpp. std::fma is correctly rounded, so
// the AVX2 lane type produces bit-identical elementwise results.

#include <bit>
#include <cmath>
#include <cstdint>

namespace onebit::kernels::detail {

struct VecScalar {
    double v;

    using Mask = bool;
    using Int = std::int64_t;

    static constexpr int width = 1;

    static VecScalar broadcast(double x) { return {x}; }
    static VecScalar load(const double* p) { return {*p}; }
    void store(double* p) const { *p = v; }

    friend VecScalar operator+(VecScalar a, VecScalar b) { return {a.v + b.v}; }
    friend VecScalar operator-(VecScalar a, VecScalar b) { return {a.v - b.v}; }
    friend VecScalar operator*(VecScalar a, VecScalar b) { return {a.v * b.v}; }
    friend VecScalar operator/(VecScalar a, VecScalar b) { return {a.v / b.v}; }

    static VecScalar fma(VecScalar a, VecScalar b, VecScalar c) { return {std::fma(a.v, b.v, c.v)}; }
    static VecScalar fnma(VecScalar a, VecScalar b, VecScalar c) { return {std::fma(-a.v, b.v, c.v)}; }
    static VecScalar max(VecScalar a, VecScalar b) { return {a.v > b.v ? a.v : b.v}; }
    static VecScalar min(VecScalar a, VecScalar b) { return {a.v < b.v ? a.v : b.v}; }
    static VecScalar abs(VecScalar a) { return {std::fabs(a.v)}; }
    static VecScalar rint(VecScalar a) { return {std::rint(a.v)}; }

    static Mask cmp_ge(VecScalar a, VecScalar b) { return a.v >= b.v; }
    static Mask cmp_gt(VecScalar a, VecScalar b) { return a.v > b.v; }
    static VecScalar blend(Mask m, VecScalar if_true, VecScalar if_false) {
        return m ? if_true : if_false;
    }

    static std::uint64_t to_bits(VecScalar a) { return std::bit_cast<std::uint64_t>(a.v); }
    static Int exponent_of(std::uint64_t bits) {
        return static_cast<Int>(bits >> 52) - 1023;
    }
    static VecScalar mantissa_to_unit(std::uint64_t bits) {
        const std::uint64_t m = (bits & 0x000fffffffffffffull) | 0x3ff0000000000000ull;
        return {std::bit_cast<double>(m)};
    }
    static VecScalar int_to_double(Int k) { return {static_cast<double>(k)}; }
    static Int to_int(VecScalar a) { return static_cast<Int>(a.v); }
    static Int shift_right_halved(Int k) { return ((k + 2048) >> 1) - 1024; }
    static Int int_sub(Int a, Int b) { return a - b; }
    static VecScalar pow2(Int m) {
        return {std::bit_cast<double>(static_cast<std::uint64_t>(m + 1023) << 52)};
    }

    double hsum() const { return v; }
};

}  // namespace onebit::kernels::detail
