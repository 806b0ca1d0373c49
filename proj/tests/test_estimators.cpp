#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "onebit/channel.hpp"
#include "onebit/estimators.hpp"
#include "onebit/measurement.hpp"
#include "onebit/serialize.hpp"
#include "test_util.hpp"

using namespace onebit;
using testutil::random_cmat;

namespace {

struct Problem {
    ChannelRealization channel;
    PilotSchedule schedule;
    MeasurementSet measurements;
};

Problem make_problem(std::size_t n, std::size_t paths, std::size_t b, double sigma,
                     std::uint64_t seed) {
    Problem p;
    Rng rng(seed);
    p.channel = generate_channel(n, paths, rng);
    p.schedule = b == 1 ? schedule_full(zc_training(n)) : schedule_offsets(zc_training(n), b);
    p.measurements = simulate(p.channel.h, p.schedule, sigma, seed ^ 0xabcdef);
    return p;
}

}  // namespace

TEST_CASE("pga: monotone accepted trace, feasible iterates, trace length") {
    const Problem p = make_problem(8, 2, 2, 1.0, 11);
    const LikelihoodContext ctx = make_context(p.measurements);
    EstimatorConfig cfg = default_config(p.schedule, 10.0);
    cfg.t_max = 40;

    std::vector<double> nuclear_norms;
    const EstimateResult res = pga_estimate(ctx, p.schedule.block, cfg,
                                            [&](std::size_t, const CMat& x) {
                                                nuclear_norms.push_back(nuclear_norm_of(svd(x)));
                                            });
    REQUIRE(res.likelihood_trace.size() == res.iterations + 1);
    for (std::size_t i = 0; i + 1 < res.likelihood_trace.size(); ++i)
        CHECK(res.likelihood_trace[i + 1] >= res.likelihood_trace[i]);
    for (double nn : nuclear_norms) CHECK(nn <= cfg.beta + 1e-6);
    CHECK(nuclear_norm_of(svd(res.g_hat)) <= cfg.beta + 1e-6);
    CHECK(max_abs_diff(res.h_hat, recover_channel(res.g_hat, p.schedule.block)) == 0.0);
}

TEST_CASE("pga: scalar probit sanity against the closed-form MLE") {
    // N = 1, 1000 repeated bits, large beta: the estimate must sit at the
    // separable probit MLE sigma * Phi^{-1}(fraction of +1 bits)
    const cplx g_true{0.8, -0.4};
    const double sigma = 1.0;
    const std::size_t m = 1000;
    CMat h(1, 1);
    h(0, 0) = g_true;
    PilotSchedule sch;
    sch.block = zc_training(1);
    sch.num_offsets = 1;
    sch.offsets = {0.0};
    sch.entries.assign(m, ScheduleEntry{0, 0});
    const MeasurementSet ms = simulate(h, sch, sigma, 321);
    const LikelihoodContext ctx = make_context(ms, sigma);

    EstimatorConfig cfg;
    cfg.beta = 100.0;  // effectively unconstrained
    cfg.eta0 = 0.1;
    cfg.t_max = 400;
    cfg.epsilon = 1e-13;
    const EstimateResult res = pga_estimate(ctx, sch.block, cfg);

    std::size_t plus_re = 0, plus_im = 0;
    for (std::size_t j = 0; j < m; ++j) {
        if (ms.bits_re[j] > 0) ++plus_re;
        if (ms.bits_im[j] > 0) ++plus_im;
    }
    auto probit_inv = [](double p) {
        // bisection on Phi; plenty for a test oracle
        double lo = -6.0, hi = 6.0;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (0.5 * std::erfc(-mid * M_SQRT1_2) < p ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    const double mle_re = sigma * probit_inv(double(plus_re) / double(m));
    const double mle_im = sigma * probit_inv(double(plus_im) / double(m));
    const double p_re = double(plus_re) / double(m);
    const double se = sigma * std::sqrt(p_re * (1 - p_re) / double(m)) /
                      (std::exp(-0.5 * mle_re * mle_re / (sigma * sigma)) / std::sqrt(2 * M_PI));
    CAPTURE(mle_re);
    CAPTURE(mle_im);
    CHECK(std::fabs(res.g_hat(0, 0).real() - mle_re) < 3.0 * se);
    CHECK(std::fabs(res.g_hat(0, 0).imag() - mle_im) < 3.0 * se);
    // and both close to the truth at this observation count
    CHECK(std::fabs(res.g_hat(0, 0).real() - g_true.real()) < 0.2);
    CHECK(std::fabs(res.g_hat(0, 0).imag() - g_true.imag()) < 0.2);
}

TEST_CASE("fw: step sizes and ball feasibility by construction") {
    CHECK(fw_step_size(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(fw_step_size(2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(fw_step_size(3) == doctest::Approx(0.4).epsilon(1e-15));

    const Problem p = make_problem(8, 2, 2, 1.0, 13);
    const LikelihoodContext ctx = make_context(p.measurements);
    EstimatorConfig cfg = default_config(p.schedule, 9.0);

    // after one step from X0 = 0 the iterate is gamma_1 * beta * (rank one)
    cfg.t_max = 1;
    const EstimateResult one = fw_estimate(ctx, p.schedule.block, cfg);
    CHECK(nuclear_norm_of(svd(one.g_hat)) == doctest::Approx(2.0 / 3.0 * 9.0).epsilon(1e-9));

    cfg.t_max = 60;
    std::vector<double> nuclear_norms;
    const EstimateResult res = fw_estimate(ctx, p.schedule.block, cfg,
                                           FwAtomScale::ConstraintRadius,
                                           [&](std::size_t, const CMat& x) {
                                               nuclear_norms.push_back(nuclear_norm_of(svd(x)));
                                           });
    REQUIRE(res.likelihood_trace.size() == res.iterations + 1);
    for (double nn : nuclear_norms) CHECK(nn <= cfg.beta + 1e-6);
    // The open-loop steps keep mixing in full-radius atoms, so the trace
    // oscillates rather than increasing monotonically; the oscillation
    // envelope must decay as the iterates converge.
    const auto& tr = res.likelihood_trace;
    auto max_dip = [&tr](std::size_t lo, std::size_t hi) {
        double d = 0.0;
        for (std::size_t i = lo; i + 1 < hi; ++i) d = std::max(d, tr[i] - tr[i + 1]);
        return d;
    };
    const double head = max_dip(1, 11);
    const double tail = max_dip(tr.size() - tr.size() / 3, tr.size());
    CHECK(tail < 0.25 * head);
    CHECK(tail <= 2e-3 * std::fabs(tr.back()));
    CHECK(tr.back() > tr.front());  // net ascent overall
}

TEST_CASE("fw literal atom scaling stays inside a much smaller set") {
    const Problem p = make_problem(6, 2, 1, 1.0, 17);
    const LikelihoodContext ctx = make_context(p.measurements);
    EstimatorConfig cfg = default_config(p.schedule, 50.0);
    cfg.t_max = 10;
    const EstimateResult lit =
        fw_estimate(ctx, p.schedule.block, cfg, FwAtomScale::GradientMagnitude);
    // gradient magnitudes here are far below beta = 50, so the literal
    // atoms cannot reach the ball boundary
    CHECK(nuclear_norm_of(svd(lit.g_hat)) < 50.0);
    const EstimateResult rad =
        fw_estimate(ctx, p.schedule.block, cfg, FwAtomScale::ConstraintRadius);
    CHECK(nuclear_norm_of(svd(rad.g_hat)) > nuclear_norm_of(svd(lit.g_hat)));
}

TEST_CASE("pga and fw agree on the same concave problem") {
    for (std::uint64_t seed : {21u, 22u, 23u, 24u}) {
        const Problem p = make_problem(16, 3, 4, 1.0, seed);
        const LikelihoodContext ctx = make_context(p.measurements);
        const EstimatorConfig cfg = default_config(p.schedule, 20.0);
        const EstimateResult a = pga_estimate(ctx, p.schedule.block, cfg);
        const EstimateResult b = fw_estimate(ctx, p.schedule.block, cfg);
        const double la = a.likelihood_trace.back();
        const double lb = b.likelihood_trace.back();
        CAPTURE(seed);
        CHECK(std::fabs(la - lb) <= 0.01 * std::fabs(la));
    }
}

TEST_CASE("ml_frobenius: feasibility and identity-training reduction") {
    const Problem p = make_problem(8, 2, 1, 1.0, 29);
    const LikelihoodContext ctx = make_context(p.measurements);
    EstimatorConfig cfg = default_config(p.schedule, 10.0);
    cfg.t_max = 40;
    const EstimateResult res = ml_frobenius_estimate(ctx, p.schedule.block, cfg);
    CHECK(res.h_hat.frobenius_norm() <= cfg.frobenius_radius + 1e-6);
    REQUIRE(res.likelihood_trace.size() == res.iterations + 1);
    for (std::size_t i = 0; i + 1 < res.likelihood_trace.size(); ++i)
        CHECK(res.likelihood_trace[i + 1] >= res.likelihood_trace[i]);
    CHECK(max_abs_diff(res.g_hat, res.h_hat * p.schedule.block.s) == 0.0);

    // with S = I the channel and pseudo-channel estimates coincide
    TrainingBlock eye{CMat::identity(8), TrainingKind::Dft, 0};
    PilotSchedule sch_eye = schedule_full(eye);
    const MeasurementSet ms = simulate(p.channel.h, sch_eye, 1.0, 99);
    const LikelihoodContext ctx_eye = make_context(ms);
    const EstimateResult r_eye = ml_frobenius_estimate(ctx_eye, eye, default_config(sch_eye, 1.0));
    CHECK(max_abs_diff(r_eye.g_hat, r_eye.h_hat) < 1e-14);
}

TEST_CASE("recover_channel") {
    Rng rng(31);
    const TrainingBlock zc = zc_training(12);
    const ChannelRealization ch = generate_channel(12, 3, rng);
    const CMat g = ch.h * zc.s;
    CHECK(max_abs_diff(recover_channel(g, zc), ch.h) < 1e-10);

    // unitary isometry of the recovery error
    const CMat g_hat = g + random_cmat(12, 12, rng, 0.1);
    const CMat h_hat = recover_channel(g_hat, zc);
    CHECK((h_hat - ch.h).frobenius_norm() ==
          doctest::Approx((g_hat - g).frobenius_norm()).epsilon(1e-12));

    TrainingBlock eye{CMat::identity(12), TrainingKind::Dft, 0};
    CHECK(max_abs_diff(recover_channel(g_hat, eye), g_hat) == 0.0);
}

TEST_CASE("estimator config validation") {
    const Problem p = make_problem(4, 2, 1, 1.0, 71);
    const LikelihoodContext ctx = make_context(p.measurements);
    EstimatorConfig bad = default_config(p.schedule, 5.0);
    bad.eta0 = 0.0;
    CHECK_THROWS_AS(pga_estimate(ctx, p.schedule.block, bad), std::invalid_argument);
    bad = default_config(p.schedule, -1.0);
    CHECK_THROWS_AS(fw_estimate(ctx, p.schedule.block, bad), std::invalid_argument);
    bad = default_config(p.schedule, 5.0);
    bad.t_max = 0;
    CHECK_THROWS_AS(ml_frobenius_estimate(ctx, p.schedule.block, bad), std::invalid_argument);
}

TEST_CASE("estimate JSON serialization") {
    const Problem p = make_problem(4, 2, 1, 1.0, 61);
    const LikelihoodContext ctx = make_context(p.measurements);
    EstimatorConfig cfg = default_config(p.schedule, 5.0);
    cfg.t_max = 5;
    const EstimateResult res = pga_estimate(ctx, p.schedule.block, cfg);
    const std::string text = estimate_to_json(res);
    CHECK(text.find("\"g_hat\"") != std::string::npos);
    CHECK(text.find("\"h_hat\"") != std::string::npos);
    CHECK(text.find("\"likelihood_trace\"") != std::string::npos);
    CHECK(text.find("\"converged_by\"") != std::string::npos);
}

TEST_CASE("solving in H-space with the mapped constraint reproduces pga") {
    // maximizing over {||W S||_* <= beta} with the isometric projection is
    // the conjugated iteration, so the channel estimates must coincide
    const Problem p = make_problem(8, 2, 1, 1.0, 37);
    const LikelihoodContext ctx = make_context(p.measurements);
    EstimatorConfig cfg = default_config(p.schedule, 8.0);
    cfg.t_max = 30;
    const EstimateResult g_space = pga_estimate(ctx, p.schedule.block, cfg);

    const CMat& s = p.schedule.block.s;
    const CMat s_adj = s.adjoint();
    CMat w(8, 8);
    double l = log_likelihood(w * s, ctx);
    double eta = cfg.eta0;
    for (std::size_t t = 1; t <= cfg.t_max; ++t) {
        const CMat grad_w = baseline_gradient_in_h(w, s, ctx);
        CMat next(1, 1);
        double l_next = 0.0;
        while (true) {
            next = project_nuclear_ball((w + cplx{eta, 0.0} * grad_w) * s, cfg.beta) * s_adj;
            l_next = log_likelihood(next * s, ctx);
            if (l_next >= l) break;
            eta *= 0.5;
        }
        w = next;
        const double dl = l_next - l;
        const bool stop = dl > 0.0 && dl < cfg.epsilon * std::fabs(l);
        l = l_next;
        if (stop) break;
    }
    const double rel = (w - g_space.h_hat).frobenius_norm() / g_space.h_hat.frobenius_norm();
    CHECK(rel < 1e-6);
    CHECK(std::fabs(l - g_space.likelihood_trace.back()) <=
          1e-8 * std::fabs(l));
}
