#pragma once

// Array-loop bodies shared by the scalar and AVX2 translation units. Tails
// shorter than the vector width always run through VecScalar, in both TUs,
// so the two backends agree elementwise.

#include <cstddef>

#include "probit_math.hpp"
#include "vec_scalar.hpp"

namespace onebit::kernels::detail {

template <class V>
void logphi_loop(const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + V::width <= n; i += V::width) vlogphi(V::load(x + i)).store(out + i);
    for (; i < n; ++i) vlogphi(VecScalar::load(x + i)).store(out + i);
}

template <class V>
void invmills_loop(const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + V::width <= n; i += V::width) vinvmills(V::load(x + i)).store(out + i);
    for (; i < n; ++i) vinvmills(VecScalar::load(x + i)).store(out + i);
}

template <class V>
double loglik_col_loop(const double* xr, const double* xi, const double* yr, const double* yi,
                       double cos_t, double sin_t, double inv_sigma, std::size_t n) {
    const V c = V::broadcast(cos_t);
    const V s = V::broadcast(sin_t);
    const V isg = V::broadcast(inv_sigma);
    V acc = V::broadcast(0.0);
    std::size_t i = 0;
    for (; i + V::width <= n; i += V::width) {
        const auto a = rotate_args(V::load(xr + i), V::load(xi + i), V::load(yr + i),
                                   V::load(yi + i), c, s, isg);
        acc = acc + (vlogphi(a.t_re) + vlogphi(a.t_im));
    }
    double total = acc.hsum();
    using S = VecScalar;
    const S cs = S::broadcast(cos_t), ss = S::broadcast(sin_t), is = S::broadcast(inv_sigma);
    for (; i < n; ++i) {
        const auto a = rotate_args(S::load(xr + i), S::load(xi + i), S::load(yr + i),
                                   S::load(yi + i), cs, ss, is);
        total += (vlogphi(a.t_re) + vlogphi(a.t_im)).v;
    }
    return total;
}

template <class V>
void grad_col_loop(const double* xr, const double* xi, const double* yr, const double* yi,
                   double cos_t, double sin_t, double inv_sigma,
                   double* grad_re, double* grad_im, std::size_t n) {
    const V c = V::broadcast(cos_t);
    const V s = V::broadcast(sin_t);
    const V isg = V::broadcast(inv_sigma);
    std::size_t i = 0;
    for (; i + V::width <= n; i += V::width) {
        const V vyr = V::load(yr + i);
        const V vyi = V::load(yi + i);
        const auto a = rotate_args(V::load(xr + i), V::load(xi + i), vyr, vyi, c, s, isg);
        const V lam_re = (vyr * vinvmills(a.t_re)) * isg;  // y^R lambda(t_re)/sigma
        const V lam_im = (vyi * vinvmills(a.t_im)) * isg;
        V gre = V::load(grad_re + i);
        gre = V::fma(lam_re, c, gre);
        gre = V::fma(lam_im, s, gre);
        gre.store(grad_re + i);
        V gim = V::load(grad_im + i);
        gim = V::fnma(lam_re, s, gim);
        gim = V::fma(lam_im, c, gim);
        gim.store(grad_im + i);
    }
    using S = VecScalar;
    const S cs = S::broadcast(cos_t), ss = S::broadcast(sin_t), is = S::broadcast(inv_sigma);
    for (; i < n; ++i) {
        const S vyr = S::load(yr + i);
        const S vyi = S::load(yi + i);
        const auto a = rotate_args(S::load(xr + i), S::load(xi + i), vyr, vyi, cs, ss, is);
        const S lam_re = (vyr * vinvmills(a.t_re)) * is;
        const S lam_im = (vyi * vinvmills(a.t_im)) * is;
        S gre = S::load(grad_re + i);
        gre = S::fma(lam_re, cs, gre);
        gre = S::fma(lam_im, ss, gre);
        gre.store(grad_re + i);
        S gim = S::load(grad_im + i);
        gim = S::fnma(lam_re, ss, gim);
        gim = S::fma(lam_im, cs, gim);
        gim.store(grad_im + i);
    }
}

}  // namespace onebit::kernels::detail
