// AVX2 backend. Compiled with -mavx2 -mfma -ffp-contract=off; only entered
// after the runtime CPU check in kernels.cpp.

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "backend_table.hpp"
#include "kernel_loops.hpp"
#include "vec_avx2.hpp"

namespace onebit::kernels::detail {
namespace {

void logphi_arr_avx2(const double* x, double* out, std::size_t n) {
    logphi_loop<VecAvx2>(x, out, n);
}

void invmills_arr_avx2(const double* x, double* out, std::size_t n) {
    invmills_loop<VecAvx2>(x, out, n);
}

double loglik_col_avx2(const double* xr, const double* xi, const double* yr, const double* yi,
                       double c, double s, double inv_sigma, std::size_t n) {
    return loglik_col_loop<VecAvx2>(xr, xi, yr, yi, c, s, inv_sigma, n);
}

void grad_col_avx2(const double* xr, const double* xi, const double* yr, const double* yi,
                   double c, double s, double inv_sigma, double* gr, double* gi,
                   std::size_t n) {
    grad_col_loop<VecAvx2>(xr, xi, yr, yi, c, s, inv_sigma, gr, gi, n);
}

// Complex kernels on interleaved (re, im) doubles; one __m256d holds two
// complex numbers.

inline __m256d cmul(__m256d w_re, __m256d w_im, __m256d a) {
    const __m256d swapped = _mm256_shuffle_pd(a, a, 0x5);  // (im, re) pairs
    return _mm256_fmaddsub_pd(w_re, a, _mm256_mul_pd(w_im, swapped));
}

CDot cdotc_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(x + 2 * i);
        const __m256d yv = _mm256_loadu_pd(y + 2 * i);
        const __m256d ys = _mm256_shuffle_pd(yv, yv, 0x5);
        acc_re = _mm256_fmadd_pd(xv, yv, acc_re);  // xr*yr, xi*yi pairs
        acc_im = _mm256_fmadd_pd(xv, ys, acc_im);  // xr*yi, xi*yr pairs
    }
    // lanes of acc_re: (xr*yr, xi*yi) -> re = sum of all
    // lanes of acc_im: (xr*yi, xi*yr) -> im = sum of even - odd
    alignas(32) double re4[4], im4[4];
    _mm256_store_pd(re4, acc_re);
    _mm256_store_pd(im4, acc_im);
    double re = (re4[0] + re4[1]) + (re4[2] + re4[3]);
    double im = (im4[0] - im4[1]) + (im4[2] - im4[3]);
    for (; i < n; ++i) {
        const double xr = x[2 * i], xi = x[2 * i + 1];
        const double yr = y[2 * i], yi = y[2 * i + 1];
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return {re, im};
}

CDot cdotu_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(x + 2 * i);
        const __m256d yv = _mm256_loadu_pd(y + 2 * i);
        const __m256d ys = _mm256_shuffle_pd(yv, yv, 0x5);
        acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
        acc_im = _mm256_fmadd_pd(xv, ys, acc_im);
    }
    alignas(32) double re4[4], im4[4];
    _mm256_store_pd(re4, acc_re);
    _mm256_store_pd(im4, acc_im);
    double re = (re4[0] - re4[1]) + (re4[2] - re4[3]);
    double im = (im4[0] + im4[1]) + (im4[2] + im4[3]);
    for (; i < n; ++i) {
        const double xr = x[2 * i], xi = x[2 * i + 1];
        const double yr = y[2 * i], yi = y[2 * i + 1];
        re += xr * yr - xi * yi;
        im += xr * yi + xi * yr;
    }
    return {re, im};
}

double norm2sq_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    const std::size_t len = 2 * n;
    for (; i + 4 <= len; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    alignas(32) double a4[4];
    _mm256_store_pd(a4, acc);
    double total = (a4[0] + a4[1]) + (a4[2] + a4[3]);
    for (; i < len; ++i) total += x[i] * x[i];
    return total;
}

void caxpy_conjx_avx2(double ar, double ai, const double* x, double* y, std::size_t n) {
    const __m256d sign = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);  // conj on im lanes
    const __m256d ar_v = _mm256_set1_pd(ar);
    const __m256d ai_v = _mm256_set1_pd(ai);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_xor_pd(_mm256_loadu_pd(x + 2 * i), sign);
        const __m256d yv = _mm256_loadu_pd(y + 2 * i);
        _mm256_storeu_pd(y + 2 * i, _mm256_add_pd(yv, cmul(ar_v, ai_v, xv)));
    }
    for (; i < n; ++i) {
        const double xr = x[2 * i], xi = -x[2 * i + 1];
        y[2 * i] += std::fma(ar, xr, -(ai * xi));
        y[2 * i + 1] += std::fma(ar, xi, ai * xr);
    }
}

void rotate_cols_avx2(double* ap, double* aq, double c, double s, double wr, double wi,
                      std::size_t n) {
    const __m256d c_v = _mm256_set1_pd(c);
    const __m256d s_v = _mm256_set1_pd(s);
    const __m256d wr_v = _mm256_set1_pd(wr);
    const __m256d wi_v = _mm256_set1_pd(wi);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d p = _mm256_loadu_pd(ap + 2 * i);
        const __m256d q = _mm256_loadu_pd(aq + 2 * i);
        const __m256d t = cmul(wr_v, wi_v, q);
        _mm256_storeu_pd(ap + 2 * i, _mm256_fnmadd_pd(s_v, t, _mm256_mul_pd(c_v, p)));
        _mm256_storeu_pd(aq + 2 * i, _mm256_fmadd_pd(s_v, p, _mm256_mul_pd(c_v, t)));
    }
    for (; i < n; ++i) {
        const double pr = ap[2 * i], pi = ap[2 * i + 1];
        const double qr = aq[2 * i], qi = aq[2 * i + 1];
        const double tr = std::fma(wr, qr, -(wi * qi));
        const double ti = std::fma(wr, qi, wi * qr);
        ap[2 * i] = std::fma(-s, tr, c * pr);
        ap[2 * i + 1] = std::fma(-s, ti, c * pi);
        aq[2 * i] = std::fma(s, pr, c * tr);
        aq[2 * i + 1] = std::fma(s, pi, c * ti);
    }
}

}  // namespace

const BackendTable& avx2_table() {
    static const BackendTable table = {
        "avx2",         logphi_arr_avx2, invmills_arr_avx2, loglik_col_avx2,
        grad_col_avx2,  cdotc_avx2,      cdotu_avx2,        norm2sq_avx2,
        caxpy_conjx_avx2, rotate_cols_avx2,
    };
    return table;
}

}  // namespace onebit::kernels::detail
