#pragma once

// Internal function-pointer table filled in by each backend TU.

#include <cstddef>

#include "onebit/kernels.hpp"

namespace onebit::kernels::detail {

struct BackendTable {
    const char* name;
    void (*logphi_arr)(const double*, double*, std::size_t);
    void (*invmills_arr)(const double*, double*, std::size_t);
    double (*loglik_col)(const double*, const double*, const double*, const double*,
                         double, double, double, std::size_t);
    void (*grad_col)(const double*, const double*, const double*, const double*,
                     double, double, double, double*, double*, std::size_t);
    CDot (*cdotc)(const double*, const double*, std::size_t);
    CDot (*cdotu)(const double*, const double*, std::size_t);
    double (*norm2sq)(const double*, std::size_t);
    void (*caxpy_conjx)(double, double, const double*, double*, std::size_t);
    void (*rotate_cols)(double*, double*, double, double, double, double, std::size_t);
};

const BackendTable& scalar_table();
const BackendTable& avx2_table();

}  // namespace onebit::kernels::detail
