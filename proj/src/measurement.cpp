#include "onebit/measurement.hpp"

#include <cmath>
#include <stdexcept>

#include "onebit/rng.hpp"

namespace onebit {

namespace {
inline double sign_bit(double v) { return v >= 0.0 ? 1.0 : -1.0; }
}  // namespace

CMat quantize_one_bit(const CMat& a) {
    if (!a.all_finite()) throw std::invalid_argument("quantize_one_bit: non-finite input");
    CMat out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(i, j) = cplx{sign_bit(a(i, j).real()), sign_bit(a(i, j).imag())};
    return out;
}

MeasurementSet simulate(const CMat& h, const PilotSchedule& schedule, double sigma,
                        std::uint64_t seed) {
    const std::size_t n = schedule.n();
    if (h.rows() != n || h.cols() != n)
        throw std::invalid_argument("simulate: channel does not match schedule block");
    if (!(sigma > 0.0)) throw std::invalid_argument("simulate: sigma must be positive");

    const CMat g = h * schedule.block.s;  // pseudo-channel, computed once

    MeasurementSet ms;
    ms.schedule = schedule;
    ms.sigma = sigma;
    ms.seed = seed;
    ms.rows = n;
    ms.bits_re.resize(n * schedule.np());
    ms.bits_im.resize(n * schedule.np());

    Rng rng(seed);
    for (std::size_t j = 0; j < schedule.np(); ++j) {
        const auto [col, b] = schedule.entries[j];
        const double c = std::cos(schedule.offsets[b]);
        const double s = std::sin(schedule.offsets[b]);
        double* br = ms.bits_re.data() + j * n;
        double* bi = ms.bits_im.data() + j * n;
        for (std::size_t row = 0; row < n; ++row) {
            const cplx gv = g(row, col);
            const cplx rotated{gv.real() * c - gv.imag() * s, gv.real() * s + gv.imag() * c};
            const cplx v = rng.complex_gaussian(sigma);
            br[row] = sign_bit(rotated.real() + v.real());
            bi[row] = sign_bit(rotated.imag() + v.imag());
        }
    }
    return ms;
}

double snr_to_sigma(double snr_db) { return std::pow(10.0, -snr_db / 20.0); }

}  // namespace onebit
