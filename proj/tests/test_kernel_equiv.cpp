// Scalar vs AVX2 backend equivalence. Elementwise kernels are required to
// match bit for bit (same correctly rounded operation sequence); reductions
// may differ only by summation order.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "onebit/kernels.hpp"
#include "onebit/rng.hpp"

using namespace onebit;
namespace k = onebit::kernels;

namespace {

bool have_avx2() {
    if (!k::cpu_supports_avx2()) {
        MESSAGE("AVX2 not available; equivalence suite skipped");
        return false;
    }
    return true;
}

std::vector<double> random_args(std::size_t n, Rng& rng) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        switch (rng.bounded(4)) {
            case 0: x[i] = rng.uniform(-3.0, 3.0); break;
            case 1: x[i] = rng.uniform(-45.0, 45.0); break;
            case 2: x[i] = rng.uniform(-1.0e8, 1.0e8); break;
            default: x[i] = rng.uniform(-1e-6, 1e-6); break;
        }
    }
    return x;
}

template <class Fn>
auto with_backend(k::Backend b, Fn&& fn) {
    k::select_backend(b);
    auto out = fn();
    k::select_backend(k::Backend::Auto);
    return out;
}

}  // namespace

TEST_CASE("elementwise logphi / inv_mills match bitwise") {
    if (!have_avx2()) return;
    Rng rng(101);
    for (std::size_t n : {1u, 3u, 4u, 5u, 16u, 67u, 256u}) {
        std::vector<double> x = random_args(n, rng);
        x[0] = 0.0;
        if (n > 2) x[1] = -0.0;
        auto run = [&x, n](k::Backend b) {
            return with_backend(b, [&] {
                std::vector<double> lp(n), im(n);
                k::log_std_normal_cdf(x.data(), lp.data(), n);
                k::inv_mills(x.data(), im.data(), n);
                return std::pair{lp, im};
            });
        };
        auto [lp_s, im_s] = run(k::Backend::Scalar);
        auto [lp_v, im_v] = run(k::Backend::Avx2);
        for (std::size_t i = 0; i < n; ++i) {
            CAPTURE(n);
            CAPTURE(x[i]);
            CHECK(lp_s[i] == lp_v[i]);
            CHECK(im_s[i] == im_v[i]);
        }
    }
}

TEST_CASE("grad_col matches bitwise, loglik_col to summation order") {
    if (!have_avx2()) return;
    Rng rng(211);
    const double thetas[] = {0.0, M_PI / 8, M_PI / 4, 3 * M_PI / 8};
    for (std::size_t n : {1u, 4u, 7u, 16u, 33u}) {
        for (double th : thetas) {
            std::vector<double> xr(n), xi(n), yr(n), yi(n);
            for (std::size_t i = 0; i < n; ++i) {
                xr[i] = rng.uniform(-20.0, 20.0);
                xi[i] = rng.uniform(-20.0, 20.0);
                yr[i] = rng.bounded(2) ? 1.0 : -1.0;
                yi[i] = rng.bounded(2) ? 1.0 : -1.0;
            }
            const double c = std::cos(th), s = std::sin(th), is = 1.0 / 0.5;
            auto run = [&](k::Backend b) {
                return with_backend(b, [&] {
                    std::vector<double> gr(n, 0.25), gi(n, -0.5);
                    const double l = k::loglik_col(xr.data(), xi.data(), yr.data(), yi.data(),
                                                   c, s, is, n);
                    k::grad_col(xr.data(), xi.data(), yr.data(), yi.data(), c, s, is,
                                gr.data(), gi.data(), n);
                    return std::tuple{l, gr, gi};
                });
            };
            auto [l_s, gr_s, gi_s] = run(k::Backend::Scalar);
            auto [l_v, gr_v, gi_v] = run(k::Backend::Avx2);
            CHECK(std::fabs(l_s - l_v) <= 1e-12 * std::fabs(l_s));
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(gr_s[i] == gr_v[i]);
                CHECK(gi_s[i] == gi_v[i]);
            }
        }
    }
}

TEST_CASE("complex vector kernels") {
    if (!have_avx2()) return;
    Rng rng(307);
    for (std::size_t n : {1u, 2u, 3u, 8u, 31u, 64u}) {
        std::vector<double> x(2 * n), y(2 * n);
        for (double& v : x) v = rng.uniform(-2.0, 2.0);
        for (double& v : y) v = rng.uniform(-2.0, 2.0);
        const double c = 0.8, s = 0.6, wr = 0.28, wi = -0.96;

        auto run = [&](k::Backend b) {
            return with_backend(b, [&] {
                auto xp = x, yp = y;
                const k::CDot dc = k::cdotc(x.data(), y.data(), n);
                const k::CDot du = k::cdotu(x.data(), y.data(), n);
                const double nq = k::norm2sq(x.data(), n);
                k::caxpy_conjx(0.3, -1.1, x.data(), yp.data(), n);
                k::rotate_cols(xp.data(), yp.data(), c, s, wr, wi, n);
                return std::tuple{dc, du, nq, xp, yp};
            });
        };
        auto [dc_s, du_s, nq_s, xp_s, yp_s] = run(k::Backend::Scalar);
        auto [dc_v, du_v, nq_v, xp_v, yp_v] = run(k::Backend::Avx2);
        const double scale = std::sqrt(nq_s) + 1.0;
        CHECK(std::fabs(dc_s.re - dc_v.re) <= 1e-13 * scale);
        CHECK(std::fabs(dc_s.im - dc_v.im) <= 1e-13 * scale);
        CHECK(std::fabs(du_s.re - du_v.re) <= 1e-13 * scale);
        CHECK(std::fabs(du_s.im - du_v.im) <= 1e-13 * scale);
        CHECK(std::fabs(nq_s - nq_v) <= 1e-13 * nq_s);
        for (std::size_t i = 0; i < 2 * n; ++i) {
            CHECK(xp_s[i] == xp_v[i]);
            CHECK(yp_s[i] == yp_v[i]);
        }
    }
}
