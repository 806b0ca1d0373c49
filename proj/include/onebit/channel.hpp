#pragma once

#include <cstdint>
#include <vector>

#include "onebit/cmat.hpp"
#include "onebit/rng.hpp"

namespace onebit {

// Ground-truth narrowband MIMO channel: a sum of num_paths outer products of
// array responses, rescaled so ||H||_F = N. rank(H) <= num_paths by
// construction.
struct ChannelRealization {
    CMat h;
    std::size_t num_paths = 0;
    std::vector<double> aod;   // departure angles, radians
    std::vector<double> aoa;   // arrival angles, radians
    std::vector<cplx> gains;   // post-normalization path gains
};

// Half-wavelength ULA response, entry k = exp(j pi k sin(angle)) / sqrt(n).
std::vector<cplx> array_response(std::size_t n, double angle_rad);

// Geometric L-path channel: gains ~ CN(0,1), angles uniform on (-pi/2, pi/2),
// then one exact rescale of both H and the recorded gains.
ChannelRealization generate_channel(std::size_t n, std::size_t num_paths, Rng& rng);

// H rebuilt from recorded metadata (used by the JSON loader).
CMat rebuild_channel(std::size_t n, const std::vector<cplx>& gains,
                     const std::vector<double>& aoa, const std::vector<double>& aod);

double nuclear_norm(const CMat& h);

struct ChannelSet {
    std::size_t n = 0;
    std::size_t paths = 0;
    std::uint64_t seed = 0;
    std::vector<ChannelRealization> channels;
};

// count channels with independent per-channel streams derived from the seed.
ChannelSet generate_channel_set(std::size_t n, std::size_t paths, std::size_t count,
                                std::uint64_t seed);

}  // namespace onebit
