#pragma once

#include <cstdint>
#include <vector>

#include "onebit/cmat.hpp"
#include "onebit/training.hpp"

namespace onebit {

// One-bit observations of a channel under a pilot schedule. Bits are stored
// as +-1.0 doubles, one contiguous block of N rows per schedule entry, so
// the likelihood kernels can consume them directly.
struct MeasurementSet {
    PilotSchedule schedule;
    double sigma = 0.0;       // true per-component noise std (complex var 2 sigma^2)
    std::uint64_t seed = 0;
    std::size_t rows = 0;     // N
    std::vector<double> bits_re;  // rows * np
    std::vector<double> bits_im;

    std::size_t np() const { return schedule.np(); }
    const double* entry_re(std::size_t j) const { return bits_re.data() + j * rows; }
    const double* entry_im(std::size_t j) const { return bits_im.data() + j * rows; }
};

// Elementwise complex sign, sign(0) = +1: entries in {+-1 +- j}.
CMat quantize_one_bit(const CMat& a);

// For schedule entry (k, b): column = Q1(H s_k e^{j theta_b} + v), noise
// drawn entry by entry in schedule order from the stream seeded here.
MeasurementSet simulate(const CMat& h, const PilotSchedule& schedule, double sigma,
                        std::uint64_t seed);

// SNR = 10 log10(1/sigma^2)  =>  sigma = 10^(-snr/20)
double snr_to_sigma(double snr_db);

}  // namespace onebit
