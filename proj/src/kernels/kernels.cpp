// Runtime backend selection and the dispatched entry points.

#include "onebit/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "backend_table.hpp"

namespace onebit::kernels {

namespace {

const detail::BackendTable* g_table = nullptr;
Backend g_backend = Backend::Auto;

Backend backend_from_env() {
    const char* env = std::getenv("ONEBIT_KERNELS");
    if (!env) return Backend::Auto;
    const std::string v(env);
    if (v == "scalar") return Backend::Scalar;
    if (v == "avx2") return Backend::Avx2;
    if (v == "auto" || v.empty()) return Backend::Auto;
    throw std::runtime_error("ONEBIT_KERNELS must be scalar, avx2 or auto (got '" + v + "')");
}

void apply(Backend b) {
    if (b == Backend::Auto) b = cpu_supports_avx2() ? Backend::Avx2 : Backend::Scalar;
    if (b == Backend::Avx2 && !cpu_supports_avx2())
        throw std::runtime_error("avx2 kernels requested but the CPU lacks AVX2/FMA");
    g_table = (b == Backend::Avx2) ? &detail::avx2_table() : &detail::scalar_table();
    g_backend = b;
}

const detail::BackendTable& table() {
    if (!g_table) apply(backend_from_env());
    return *g_table;
}

}  // namespace

bool cpu_supports_avx2() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

void select_backend(Backend b) { apply(b); }

Backend active_backend() {
    table();
    return g_backend;
}

const char* backend_name() { return table().name; }

void log_std_normal_cdf(const double* x, double* out, std::size_t n) {
    table().logphi_arr(x, out, n);
}

void inv_mills(const double* x, double* out, std::size_t n) {
    table().invmills_arr(x, out, n);
}

double loglik_col(const double* xr, const double* xi, const double* yr, const double* yi,
                  double cos_t, double sin_t, double inv_sigma, std::size_t n) {
    return table().loglik_col(xr, xi, yr, yi, cos_t, sin_t, inv_sigma, n);
}

void grad_col(const double* xr, const double* xi, const double* yr, const double* yi,
              double cos_t, double sin_t, double inv_sigma,
              double* grad_re, double* grad_im, std::size_t n) {
    table().grad_col(xr, xi, yr, yi, cos_t, sin_t, inv_sigma, grad_re, grad_im, n);
}

CDot cdotc(const double* x, const double* y, std::size_t n) { return table().cdotc(x, y, n); }
CDot cdotu(const double* x, const double* y, std::size_t n) { return table().cdotu(x, y, n); }
double norm2sq(const double* x, std::size_t n) { return table().norm2sq(x, n); }

void caxpy_conjx(double ar, double ai, const double* x, double* y, std::size_t n) {
    table().caxpy_conjx(ar, ai, x, y, n);
}

void rotate_cols(double* ap, double* aq, double c, double s, double wr, double wi,
                 std::size_t n) {
    table().rotate_cols(ap, aq, c, s, wr, wi, n);
}

}  // namespace onebit::kernels
