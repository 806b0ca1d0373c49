// Scalar reference backend. Compiled with -ffp-contract=off so the compiler
// cannot fuse the carefully ordered mul/add sequences.

#include <cmath>
#include <cstddef>

#include "backend_table.hpp"
#include "kernel_loops.hpp"
#include "vec_scalar.hpp"

namespace onebit::kernels {

namespace detail {
namespace {

void logphi_arr_scalar(const double* x, double* out, std::size_t n) {
    logphi_loop<VecScalar>(x, out, n);
}

void invmills_arr_scalar(const double* x, double* out, std::size_t n) {
    invmills_loop<VecScalar>(x, out, n);
}

double loglik_col_scalar(const double* xr, const double* xi, const double* yr, const double* yi,
                         double c, double s, double inv_sigma, std::size_t n) {
    return loglik_col_loop<VecScalar>(xr, xi, yr, yi, c, s, inv_sigma, n);
}

void grad_col_scalar(const double* xr, const double* xi, const double* yr, const double* yi,
                     double c, double s, double inv_sigma, double* gr, double* gi,
                     std::size_t n) {
    grad_col_loop<VecScalar>(xr, xi, yr, yi, c, s, inv_sigma, gr, gi, n);
}

CDot cdotc_scalar(const double* x, const double* y, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[2 * i], xi = x[2 * i + 1];
        const double yr = y[2 * i], yi = y[2 * i + 1];
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return {re, im};
}

CDot cdotu_scalar(const double* x, const double* y, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[2 * i], xi = x[2 * i + 1];
        const double yr = y[2 * i], yi = y[2 * i + 1];
        re += xr * yr - xi * yi;
        im += xr * yi + xi * yr;
    }
    return {re, im};
}

double norm2sq_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < 2 * n; ++i) acc += x[i] * x[i];
    return acc;
}

void caxpy_conjx_scalar(double ar, double ai, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[2 * i], xi = -x[2 * i + 1];
        y[2 * i] += std::fma(ar, xr, -(ai * xi));
        y[2 * i + 1] += std::fma(ar, xi, ai * xr);
    }
}

// [ap, aq] <- [c*ap - s*(w*aq), s*ap + c*(w*aq)]; operation order mirrors
// the AVX2 fmaddsub/fma sequence exactly.
void rotate_cols_scalar(double* ap, double* aq, double c, double s, double wr, double wi,
                        std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double pr = ap[2 * i], pi = ap[2 * i + 1];
        const double qr = aq[2 * i], qi = aq[2 * i + 1];
        const double tr = std::fma(wr, qr, -(wi * qi));  // (w*aq).re
        const double ti = std::fma(wr, qi, wi * qr);     // (w*aq).im
        ap[2 * i] = std::fma(-s, tr, c * pr);
        ap[2 * i + 1] = std::fma(-s, ti, c * pi);
        aq[2 * i] = std::fma(s, pr, c * tr);
        aq[2 * i + 1] = std::fma(s, pi, c * ti);
    }
}

}  // namespace

const BackendTable& scalar_table() {
    static const BackendTable table = {
        "scalar",         logphi_arr_scalar, invmills_arr_scalar, loglik_col_scalar,
        grad_col_scalar,  cdotc_scalar,      cdotu_scalar,        norm2sq_scalar,
        caxpy_conjx_scalar, rotate_cols_scalar,
    };
    return table;
}

}  // namespace detail

// Public scalar special functions: always the reference path, independent of
// the selected array backend.

double erfcx(double x) { return detail::verfcx(detail::VecScalar{x}).v; }
double std_normal_cdf(double x) { return detail::vnormcdf(detail::VecScalar{x}).v; }
double log_std_normal_cdf(double x) { return detail::vlogphi(detail::VecScalar{x}).v; }
double inv_mills(double x) { return detail::vinvmills(detail::VecScalar{x}).v; }

}  // namespace onebit::kernels
