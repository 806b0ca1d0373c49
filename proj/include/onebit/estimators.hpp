#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "onebit/cmat.hpp"
#include "onebit/likelihood.hpp"
#include "onebit/numerics.hpp"
#include "onebit/training.hpp"

namespace onebit {

struct EstimatorConfig {
    double beta = 20.1;            // nuclear-ball radius
    double eta0 = 0.1;             // initial ascent step (0.1/B for B offsets)
    std::size_t t_max = 80;
    double epsilon = 1e-10;        // stopping threshold
    double frobenius_radius = 16.0;  // baseline constraint ||H||_F <= radius
    double power_tol = 1e-9;
    std::size_t power_max_iter = 500;
};

// eta0 = 0.1/B and frobenius_radius = N, derived from the schedule.
EstimatorConfig default_config(const PilotSchedule& schedule, double beta);

enum class ConvergedBy { StoppingRule, TMax };

struct EstimateResult {
    CMat g_hat;
    CMat h_hat;
    std::size_t iterations = 0;
    std::vector<double> likelihood_trace;  // length = iterations + 1
    std::size_t step_halvings = 0;
    ConvergedBy converged_by = ConvergedBy::TMax;
};

// Optional per-iterate hook (t, accepted iterate), used by tests.
using IterateObserver = std::function<void(std::size_t, const CMat&)>;

// Projected gradient ascent over the pseudo-channel on the nuclear ball.
// A step that lowers the likelihood is rejected and retried with the step
// size halved; the accepted trace is therefore non-decreasing. Stops when
// 0 < dL < epsilon |L| or at t_max. X_0 = 0.
EstimateResult pga_estimate(const LikelihoodContext& ctx, const TrainingBlock& s,
                            const EstimatorConfig& cfg,
                            const IterateObserver& observer = nullptr);

// Scaling of the Frank-Wolfe atom: the linear maximization over the nuclear
// ball lands on the sphere (radius beta); GradientMagnitude keeps the
// top singular value of the gradient instead.
enum class FwAtomScale { ConstraintRadius, GradientMagnitude };

// Frank-Wolfe with open-loop steps gamma_t = 2/(t+2); every iterate is a
// convex combination of ball points, so feasibility is automatic.
EstimateResult fw_estimate(const LikelihoodContext& ctx, const TrainingBlock& s,
                           const EstimatorConfig& cfg,
                           FwAtomScale atom = FwAtomScale::ConstraintRadius,
                           const IterateObserver& observer = nullptr);

// Gradient ascent directly on the channel variable with a Frobenius-ball
// constraint (the structure-agnostic maximum-likelihood baseline).
EstimateResult ml_frobenius_estimate(const LikelihoodContext& ctx, const TrainingBlock& s,
                                     const EstimatorConfig& cfg);

inline double fw_step_size(std::size_t t) { return 2.0 / static_cast<double>(t + 2); }

// H_hat = G_hat S^* (single multiplication; S unitary).
CMat recover_channel(const CMat& g_hat, const TrainingBlock& s);

}  // namespace onebit
