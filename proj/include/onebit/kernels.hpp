#pragma once

#include <cstddef>

// Numeric inner-loop kernels. Every function has a scalar reference
// implementation and an AVX2 variant; the active one is picked at runtime
// (CPU detection, overridable via select_backend or the ONEBIT_KERNELS
// environment variable: "scalar", "avx2", "auto").
//
// The elementwise kernels produce bit-identical results across backends:
// both paths evaluate the same polynomial steps with correctly rounded
// mul/add/fma. Reductions (loglik_col, cdot*) may differ by summation
// order, bounded by a few ulp.

namespace onebit::kernels {

enum class Backend { Auto, Scalar, Avx2 };

// Throws std::runtime_error if the requested backend is unsupported here.
void select_backend(Backend b);
Backend active_backend();       // resolved backend, never Auto
const char* backend_name();
bool cpu_supports_avx2();

// ---- scalar special functions (single-value reference path) ----

double erfcx(double x);                // scaled complementary error function, x >= 0
double std_normal_cdf(double x);       // Phi
double log_std_normal_cdf(double x);   // log Phi, stable for large negative x
double inv_mills(double x);            // phi(x) / Phi(x)

// ---- dispatched array kernels ----

void log_std_normal_cdf(const double* x, double* out, std::size_t n);
void inv_mills(const double* x, double* out, std::size_t n);

// One-bit probit log-likelihood of a pseudo-channel column observed under a
// phase offset (cos_t, sin_t) with bits yr/yi in {+1,-1}:
//   sum_i log Phi(yr_i * (xr_i c - xi_i s) * inv_sigma)
//       + log Phi(yi_i * (xr_i s + xi_i c) * inv_sigma)
double loglik_col(const double* xr, const double* xi, const double* yr, const double* yi,
                  double cos_t, double sin_t, double inv_sigma, std::size_t n);

// Accumulates the gradient of loglik_col into (grad_re, grad_im).
void grad_col(const double* xr, const double* xi, const double* yr, const double* yi,
              double cos_t, double sin_t, double inv_sigma,
              double* grad_re, double* grad_im, std::size_t n);

// ---- complex vector kernels (interleaved re,im doubles, n complex) ----

struct CDot {
    double re;
    double im;
};

CDot cdotc(const double* x, const double* y, std::size_t n);  // sum conj(x) * y
CDot cdotu(const double* x, const double* y, std::size_t n);  // sum x * y
double norm2sq(const double* x, std::size_t n);               // sum |x|^2

// y += a * conj(x), complex scalar a = (ar, ai)
void caxpy_conjx(double ar, double ai, const double* x, double* y, std::size_t n);

// Jacobi column rotation with phase w = (wr, wi), |w| = 1:
//   [ap, aq] <- [c*ap - s*(w*aq), s*ap + c*(w*aq)]
void rotate_cols(double* ap, double* aq, double c, double s, double wr, double wi,
                 std::size_t n);

}  // namespace onebit::kernels
