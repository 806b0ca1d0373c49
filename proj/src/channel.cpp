#include "onebit/channel.hpp"

#include <cmath>

#include "onebit/numerics.hpp"

namespace onebit {

std::vector<cplx> array_response(std::size_t n, double angle_rad) {
    if (n < 1) throw std::invalid_argument("array_response: n must be >= 1");
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    const double step = M_PI * std::sin(angle_rad);
    std::vector<cplx> a(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double phase = step * static_cast<double>(k);
        a[k] = cplx{inv_sqrt_n * std::cos(phase), inv_sqrt_n * std::sin(phase)};
    }
    return a;
}

CMat rebuild_channel(std::size_t n, const std::vector<cplx>& gains,
                     const std::vector<double>& aoa, const std::vector<double>& aod) {
    CMat h(n, n);
    for (std::size_t l = 0; l < gains.size(); ++l) {
        const std::vector<cplx> rx = array_response(n, aoa[l]);
        const std::vector<cplx> tx = array_response(n, aod[l]);
        for (std::size_t i = 0; i < n; ++i) {
            const cplx gi = gains[l] * rx[i];
            for (std::size_t j = 0; j < n; ++j) h(i, j) += gi * std::conj(tx[j]);
        }
    }
    return h;
}

ChannelRealization generate_channel(std::size_t n, std::size_t num_paths, Rng& rng) {
    if (num_paths < 1 || num_paths > n)
        throw std::invalid_argument("generate_channel: need 1 <= paths <= n");
    ChannelRealization ch;
    ch.num_paths = num_paths;
    ch.aoa.resize(num_paths);
    ch.aod.resize(num_paths);
    ch.gains.resize(num_paths);
    for (std::size_t l = 0; l < num_paths; ++l) {
        ch.aoa[l] = rng.uniform(-M_PI / 2.0, M_PI / 2.0);
        ch.aod[l] = rng.uniform(-M_PI / 2.0, M_PI / 2.0);
        ch.gains[l] = rng.complex_gaussian(M_SQRT1_2);  // CN(0, 1)
    }
    CMat h = rebuild_channel(n, ch.gains, ch.aoa, ch.aod);
    const double fro = h.frobenius_norm();
    if (fro == 0.0) throw std::runtime_error("generate_channel: degenerate draw");
    const double scale = static_cast<double>(n) / fro;
    h *= cplx{scale, 0.0};
    for (cplx& g : ch.gains) g *= scale;  // keep H = sum g a a^* exact
    ch.h = std::move(h);
    return ch;
}

double nuclear_norm(const CMat& h) { return nuclear_norm_of(svd(h)); }

ChannelSet generate_channel_set(std::size_t n, std::size_t paths, std::size_t count,
                                std::uint64_t seed) {
    ChannelSet set;
    set.n = n;
    set.paths = paths;
    set.seed = seed;
    set.channels.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng(derive_seed(seed, {0x6368616eull /*"chan"*/, i}));
        set.channels.push_back(generate_channel(n, paths, rng));
    }
    return set;
}

}  // namespace onebit
