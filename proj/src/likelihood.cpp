#include "onebit/likelihood.hpp"

#include <cmath>
#include <stdexcept>

#include "onebit/kernels.hpp"

namespace onebit {

namespace {

struct Scratch {
    std::vector<double> xr, xi, gr, gi;
};

Scratch& scratch() {
    thread_local Scratch s;
    return s;
}

// split column-major copy of x so each kernel call reads contiguous memory
void split_columns(const CMat& x, std::vector<double>& xr, std::vector<double>& xi) {
    const std::size_t n = x.rows();
    xr.resize(n * n);
    xi.resize(n * n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
            xr[k * n + l] = x(l, k).real();
            xi[k * n + l] = x(l, k).imag();
        }
}

void check_dims(const CMat& x, const LikelihoodContext& ctx) {
    if (!ctx.measurements) throw std::invalid_argument("likelihood: empty context");
    const std::size_t n = ctx.measurements->rows;
    if (x.rows() != n || x.cols() != n)
        throw std::invalid_argument("likelihood: X must be N x N matching the schedule");
}

}  // namespace

LikelihoodContext make_context(const MeasurementSet& ms, double sigma_clip) {
    LikelihoodContext ctx;
    ctx.measurements = &ms;
    ctx.sigma_likel = std::max(sigma_clip, ms.sigma);
    ctx.cos_offsets.reserve(ms.schedule.offsets.size());
    ctx.sin_offsets.reserve(ms.schedule.offsets.size());
    for (double th : ms.schedule.offsets) {
        ctx.cos_offsets.push_back(std::cos(th));
        ctx.sin_offsets.push_back(std::sin(th));
    }
    return ctx;
}

double log_likelihood(const CMat& x, const LikelihoodContext& ctx) {
    check_dims(x, ctx);
    const MeasurementSet& ms = *ctx.measurements;
    const std::size_t n = ms.rows;
    Scratch& sc = scratch();
    split_columns(x, sc.xr, sc.xi);
    const double inv_sigma = 1.0 / ctx.sigma_likel;
    double total = 0.0;
    for (std::size_t j = 0; j < ms.np(); ++j) {
        const auto [k, b] = ms.schedule.entries[j];
        total += kernels::loglik_col(sc.xr.data() + k * n, sc.xi.data() + k * n,
                                     ms.entry_re(j), ms.entry_im(j), ctx.cos_offsets[b],
                                     ctx.sin_offsets[b], inv_sigma, n);
    }
    return total;
}

CMat gradient(const CMat& x, const LikelihoodContext& ctx) {
    check_dims(x, ctx);
    const MeasurementSet& ms = *ctx.measurements;
    const std::size_t n = ms.rows;
    Scratch& sc = scratch();
    split_columns(x, sc.xr, sc.xi);
    sc.gr.assign(n * n, 0.0);
    sc.gi.assign(n * n, 0.0);
    const double inv_sigma = 1.0 / ctx.sigma_likel;
    for (std::size_t j = 0; j < ms.np(); ++j) {
        const auto [k, b] = ms.schedule.entries[j];
        kernels::grad_col(sc.xr.data() + k * n, sc.xi.data() + k * n, ms.entry_re(j),
                          ms.entry_im(j), ctx.cos_offsets[b], ctx.sin_offsets[b], inv_sigma,
                          sc.gr.data() + k * n, sc.gi.data() + k * n, n);
    }
    CMat out(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) out(l, k) = cplx{sc.gr[k * n + l], sc.gi[k * n + l]};
    return out;
}

CMat baseline_gradient_in_h(const CMat& w, const CMat& s, const LikelihoodContext& ctx) {
    if (w.cols() != s.rows())
        throw std::invalid_argument("baseline_gradient_in_h: shape mismatch");
    return gradient(w * s, ctx) * s.adjoint();
}

}  // namespace onebit
