#include "onebit/training.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace onebit {

TrainingBlock dft_training(std::size_t n) {
    if (n < 1) throw std::invalid_argument("dft_training: n must be >= 1");
    CMat s(n, n);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            // exponent reduced mod N before the trig call to keep the
            // argument small for large k*l
            const double frac = static_cast<double>((k * l) % n) / static_cast<double>(n);
            const double phase = -2.0 * M_PI * frac;
            s(k, l) = cplx{inv_sqrt_n * std::cos(phase), inv_sqrt_n * std::sin(phase)};
        }
    }
    return {std::move(s), TrainingKind::Dft, 0};
}

TrainingBlock zc_training(std::size_t n, std::size_t root) {
    if (n < 1) throw std::invalid_argument("zc_training: n must be >= 1");
    if (std::gcd(root, n) != 1)
        throw std::invalid_argument("zc_training: root must be coprime to n");
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<cplx> z(n);
    for (std::size_t m = 0; m < n; ++m) {
        // quadratic exponent mod 2N (the phase is -pi q / N = -2 pi q / (2N))
        const std::size_t q = (n % 2 == 0) ? (root * ((m * m) % (2 * n))) % (2 * n)
                                           : (root * ((m * (m + 1)) % (2 * n))) % (2 * n);
        const double phase = -M_PI * static_cast<double>(q) / static_cast<double>(n);
        z[m] = cplx{inv_sqrt_n * std::cos(phase), inv_sqrt_n * std::sin(phase)};
    }
    CMat s(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m) s(m, k) = z[(m + n - k % n) % n];
    return {std::move(s), TrainingKind::ZcCirculant, root};
}

std::vector<double> phase_offsets(std::size_t b) {
    if (b < 1) throw std::invalid_argument("phase_offsets: b must be >= 1");
    std::vector<double> out(b);
    for (std::size_t i = 0; i < b; ++i)
        out[i] = M_PI * static_cast<double>(i) / (2.0 * static_cast<double>(b));
    return out;
}

PilotSchedule schedule_full(TrainingBlock block) {
    PilotSchedule sch;
    const std::size_t n = block.n();
    sch.block = std::move(block);
    sch.num_offsets = 1;
    sch.offsets = phase_offsets(1);
    sch.entries.reserve(n);
    for (std::size_t k = 0; k < n; ++k) sch.entries.push_back({k, 0});
    return sch;
}

PilotSchedule schedule_subsample(TrainingBlock block, std::size_t np, Rng& rng) {
    const std::size_t n = block.n();
    if (np < 1 || np >= n)
        throw std::invalid_argument("schedule_subsample: need 1 <= np < n");
    PilotSchedule sch;
    sch.block = std::move(block);
    sch.num_offsets = 1;
    sch.offsets = phase_offsets(1);
    for (std::size_t k : rng.sample_without_replacement(n, np)) sch.entries.push_back({k, 0});
    return sch;
}

PilotSchedule schedule_offsets(TrainingBlock block, std::size_t b) {
    const std::size_t n = block.n();
    PilotSchedule sch;
    sch.block = std::move(block);
    sch.num_offsets = b;
    sch.offsets = phase_offsets(b);
    sch.entries.reserve(n * b);
    for (std::size_t bi = 0; bi < b; ++bi)
        for (std::size_t k = 0; k < n; ++k) sch.entries.push_back({k, bi});
    return sch;
}

const char* training_kind_name(TrainingKind k) {
    return k == TrainingKind::Dft ? "dft" : "zc";
}

}  // namespace onebit
