#include "onebit/estimators.hpp"

#include <cmath>
#include <stdexcept>

#include "onebit/rng.hpp"

namespace onebit {

namespace {

void validate(const EstimatorConfig& cfg) {
    if (!(cfg.beta > 0.0) || !(cfg.eta0 > 0.0) || !(cfg.epsilon > 0.0) ||
        !(cfg.frobenius_radius > 0.0) || !(cfg.power_tol > 0.0) || cfg.t_max < 1 ||
        cfg.power_max_iter < 1)
        throw std::invalid_argument("EstimatorConfig: all parameters must be positive");
}

void check_finite_likelihood(double l) {
    if (!std::isfinite(l))
        throw std::runtime_error("estimator: likelihood became non-finite; check sigma and bits");
}

// Shared ascent skeleton for PGA and the Frobenius baseline: propose
// X + eta * grad, project, and reject the step (halving eta) while the
// likelihood decreases.
template <class ProjectFn>
EstimateResult projected_ascent(const LikelihoodContext& ctx, const EstimatorConfig& cfg,
                                std::size_t n, const ProjectFn& project,
                                const IterateObserver& observer) {
    EstimateResult res;
    CMat x(n, n);
    double l = log_likelihood(x, ctx);
    check_finite_likelihood(l);
    res.likelihood_trace.push_back(l);
    double eta = cfg.eta0;
    const double eta_floor = cfg.eta0 * 1e-18;

    for (std::size_t t = 1; t <= cfg.t_max; ++t) {
        const CMat grad_x = gradient(x, ctx);
        CMat next(1, 1);
        double l_next = 0.0;
        bool accepted = false;
        while (eta > eta_floor) {
            next = project(x + cplx{eta, 0.0} * grad_x);
            l_next = log_likelihood(next, ctx);
            check_finite_likelihood(l_next);
            if (l_next < l) {
                eta *= 0.5;  // reject, retry the whole step
                ++res.step_halvings;
            } else {
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            // no ascent step survives at machine-level eta: treat as converged
            res.converged_by = ConvergedBy::StoppingRule;
            break;
        }
        x = std::move(next);
        res.iterations = t;
        res.likelihood_trace.push_back(l_next);
        if (observer) observer(t, x);
        const double dl = l_next - l;
        const bool stop = dl > 0.0 && dl < cfg.epsilon * std::fabs(l);
        l = l_next;
        if (stop) {
            res.converged_by = ConvergedBy::StoppingRule;
            break;
        }
    }
    res.g_hat = std::move(x);
    return res;
}

}  // namespace

EstimatorConfig default_config(const PilotSchedule& schedule, double beta) {
    EstimatorConfig cfg;
    cfg.beta = beta;
    cfg.eta0 = 0.1 / static_cast<double>(schedule.num_offsets);
    cfg.frobenius_radius = static_cast<double>(schedule.n());
    return cfg;
}

EstimateResult pga_estimate(const LikelihoodContext& ctx, const TrainingBlock& s,
                            const EstimatorConfig& cfg, const IterateObserver& observer) {
    validate(cfg);
    const std::size_t n = ctx.measurements->rows;
    auto project = [&cfg](const CMat& z) { return project_nuclear_ball(z, cfg.beta); };
    EstimateResult res = projected_ascent(ctx, cfg, n, project, observer);
    res.h_hat = recover_channel(res.g_hat, s);
    return res;
}

EstimateResult fw_estimate(const LikelihoodContext& ctx, const TrainingBlock& s,
                           const EstimatorConfig& cfg, FwAtomScale atom,
                           const IterateObserver& observer) {
    validate(cfg);
    const std::size_t n = ctx.measurements->rows;
    EstimateResult res;
    CMat x(n, n);
    double l = log_likelihood(x, ctx);
    check_finite_likelihood(l);
    res.likelihood_trace.push_back(l);
    Rng power_rng(derive_seed(ctx.measurements->seed, {0x706f776572ull /*"power"*/}));

    for (std::size_t t = 1; t <= cfg.t_max; ++t) {
        const CMat grad_x = gradient(x, ctx);
        if (grad_x.frobenius_norm() == 0.0) {
            res.converged_by = ConvergedBy::StoppingRule;  // stationary: X is optimal
            break;
        }
        const TopSingularPair top = top_singular_pair(grad_x, cfg.power_tol,
                                                      static_cast<int>(cfg.power_max_iter),
                                                      power_rng);
        const double scale = atom == FwAtomScale::ConstraintRadius ? cfg.beta : top.sigma;
        const CMat d = scale * outer(top.u, top.v);
        const double gamma = fw_step_size(t);
        x = x + cplx{gamma, 0.0} * (d - x);
        const double l_next = log_likelihood(x, ctx);
        check_finite_likelihood(l_next);
        res.iterations = t;
        res.likelihood_trace.push_back(l_next);
        if (observer) observer(t, x);
        const double dl = l_next - l;
        const bool stop = dl > 0.0 && dl < cfg.epsilon * std::fabs(l);
        l = l_next;
        if (stop) {
            res.converged_by = ConvergedBy::StoppingRule;
            break;
        }
    }
    res.g_hat = std::move(x);
    res.h_hat = recover_channel(res.g_hat, s);
    return res;
}

EstimateResult ml_frobenius_estimate(const LikelihoodContext& ctx, const TrainingBlock& s,
                                     const EstimatorConfig& cfg) {
    validate(cfg);
    const std::size_t n = ctx.measurements->rows;
    EstimateResult res;
    CMat w(n, n);
    double l = log_likelihood(w * s.s, ctx);
    check_finite_likelihood(l);
    res.likelihood_trace.push_back(l);
    double eta = cfg.eta0;
    const double eta_floor = cfg.eta0 * 1e-18;

    auto project_fro = [&cfg](CMat m) {
        const double fro = m.frobenius_norm();
        if (fro > cfg.frobenius_radius) m *= cplx{cfg.frobenius_radius / fro, 0.0};
        return m;
    };

    for (std::size_t t = 1; t <= cfg.t_max; ++t) {
        const CMat grad_w = baseline_gradient_in_h(w, s.s, ctx);
        CMat next(1, 1);
        double l_next = 0.0;
        bool accepted = false;
        while (eta > eta_floor) {
            next = project_fro(w + cplx{eta, 0.0} * grad_w);
            l_next = log_likelihood(next * s.s, ctx);
            check_finite_likelihood(l_next);
            if (l_next < l) {
                eta *= 0.5;
                ++res.step_halvings;
            } else {
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            res.converged_by = ConvergedBy::StoppingRule;
            break;
        }
        w = std::move(next);
        res.iterations = t;
        res.likelihood_trace.push_back(l_next);
        const double dl = l_next - l;
        const bool stop = dl > 0.0 && dl < cfg.epsilon * std::fabs(l);
        l = l_next;
        if (stop) {
            res.converged_by = ConvergedBy::StoppingRule;
            break;
        }
    }
    res.h_hat = w;
    res.g_hat = w * s.s;
    return res;
}

CMat recover_channel(const CMat& g_hat, const TrainingBlock& s) {
    if (g_hat.cols() != s.s.rows()) throw std::invalid_argument("recover_channel: shape mismatch");
    return g_hat * s.s.adjoint();
}

}  // namespace onebit
