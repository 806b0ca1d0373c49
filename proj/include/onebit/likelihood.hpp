#pragma once

#include <vector>

#include "onebit/cmat.hpp"
#include "onebit/measurement.hpp"

namespace onebit {

// Evaluation context: the observed bits plus the (clipped) noise level used
// inside the likelihood. The clip is numerical only; measurements are always
// acquired at the true sigma.
struct LikelihoodContext {
    const MeasurementSet* measurements = nullptr;
    double sigma_likel = 0.0;
    std::vector<double> cos_offsets;
    std::vector<double> sin_offsets;
};

// sigma_likel = max(sigma_clip, measurements.sigma); the default clip is 0.5.
LikelihoodContext make_context(const MeasurementSet& ms, double sigma_clip = 0.5);

// L_Y(X) = sum over schedule entries (k, b) and rows l of
//   log Phi(y^R u / sigma) + log Phi(y^I w / sigma),
// u = x^R cos(theta_b) - x^I sin(theta_b), w = x^R sin(theta_b) + x^I cos(theta_b)
// for x = X_{l,k}. At theta_b = 0 this is the separable real/imag probit
// likelihood; unobserved columns contribute nothing.
double log_likelihood(const CMat& x, const LikelihoodContext& ctx);

// Entry (l,k): d/dx^R + j d/dx^I of the terms observing column k.
CMat gradient(const CMat& x, const LikelihoodContext& ctx);

// Gradient of W -> L_Y(W S): gradient(W S) S^*.
CMat baseline_gradient_in_h(const CMat& w, const CMat& s, const LikelihoodContext& ctx);

}  // namespace onebit
