#include "onebit/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "onebit/measurement.hpp"

namespace onebit {

namespace {

constexpr double kNmseFloorDb = -300.0;

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string format_fixed3(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

TrainingBlock make_training(TrainingKind kind, std::size_t n, std::size_t zc_root) {
    return kind == TrainingKind::Dft ? dft_training(n) : zc_training(n, zc_root);
}

PilotSchedule make_schedule(TrainingBlock block, std::size_t np, Rng& rng) {
    const std::size_t n = block.n();
    if (np < n) return schedule_subsample(std::move(block), np, rng);
    if (np == n) return schedule_full(std::move(block));
    if (np % n != 0)
        throw std::invalid_argument("pilot count above N must be a multiple of N");
    return schedule_offsets(std::move(block), np / n);
}

}  // namespace

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Pga: return "pga";
        case Algorithm::Fw: return "fw";
        case Algorithm::MlFrobenius: return "mlfro";
    }
    return "?";
}

NmseValue nmse(const CMat& h, const CMat& h_hat, bool real_kappa) {
    if (h.rows() != h_hat.rows() || h.cols() != h_hat.cols())
        throw std::invalid_argument("nmse: shape mismatch");
    NmseValue out;
    const double hh = h_hat.frobenius_norm();
    const double h2 = h.frobenius_norm();
    if (h2 == 0.0) throw std::invalid_argument("nmse: reference channel is zero");
    if (hh == 0.0) {
        out.degenerate = true;
        out.db = 0.0;  // kappa undefined; residual ratio is 1
        return out;
    }
    cplx kappa = h_hat.inner(h) / cplx{hh * hh, 0.0};
    if (real_kappa) kappa = cplx{kappa.real(), 0.0};
    double resid2 = 0.0;
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j)
            resid2 += std::norm(h(i, j) - kappa * h_hat(i, j));
    const double ratio = resid2 / (h2 * h2);
    if (ratio <= 0.0 || 10.0 * std::log10(ratio) < kNmseFloorDb) {
        out.floored = true;
        out.db = kNmseFloorDb;
        return out;
    }
    out.db = 10.0 * std::log10(ratio);
    return out;
}

double peak_to_average_ratio_db(const CMat& g) {
    double peak = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) {
            const double a = std::abs(g(i, j));
            peak = std::max(peak, a);
            sum += a;
        }
    if (peak == 0.0) throw std::invalid_argument("peak_to_average_ratio_db: zero matrix");
    const double mean = sum / static_cast<double>(g.size());
    return 20.0 * std::log10(peak / mean);
}

double beta_percentile_90(const ChannelSet& channels) {
    std::vector<double> norms;
    norms.reserve(channels.channels.size());
    for (const ChannelRealization& ch : channels.channels) norms.push_back(nuclear_norm(ch.h));
    std::sort(norms.begin(), norms.end());
    const std::size_t n = norms.size();
    if (n == 0) throw std::invalid_argument("beta_percentile_90: empty channel set");
    if (n == 1) return norms[0];
    const double pos = 0.9 * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= n) return norms[n - 1];
    return norms[lo] + frac * (norms[lo + 1] - norms[lo]);
}

std::vector<ResultRecord> run_experiment(const ExperimentSpec& spec) {
    if (spec.snr_db_grid.empty() || spec.pilot_grid.empty() || spec.training_kinds.empty() ||
        spec.algorithms.empty())
        throw std::invalid_argument("run_experiment: empty grid");
    for (std::size_t np : spec.pilot_grid)
        if (np > spec.n && np % spec.n != 0)
            throw std::invalid_argument("run_experiment: pilot counts above N must be multiples of N");

    const ChannelSet channels =
        generate_channel_set(spec.n, spec.paths, spec.num_channels, spec.master_seed);
    const double beta =
        spec.beta_mode == BetaMode::Fixed ? spec.beta_value : beta_percentile_90(channels);

    std::vector<ResultRecord> records;
    records.reserve(spec.num_channels * spec.snr_db_grid.size() * spec.pilot_grid.size() *
                    spec.training_kinds.size() * spec.algorithms.size());

    for (std::size_t ci = 0; ci < channels.channels.size(); ++ci) {
        const ChannelRealization& ch = channels.channels[ci];
        for (std::size_t si = 0; si < spec.snr_db_grid.size(); ++si) {
            for (std::size_t pi = 0; pi < spec.pilot_grid.size(); ++pi) {
                for (TrainingKind kind : spec.training_kinds) {
                    for (Algorithm algo : spec.algorithms) {
                        ResultRecord rec;
                        rec.channel_id = ci;
                        rec.algorithm = algo;
                        rec.training = kind;
                        rec.snr_db = spec.snr_db_grid[si];
                        rec.np = spec.pilot_grid[pi];
                        rec.seed = derive_seed(
                            spec.master_seed,
                            {ci, si, pi, static_cast<std::uint64_t>(kind),
                             static_cast<std::uint64_t>(algo)});
                        try {
                            Rng cell_rng(rec.seed);
                            PilotSchedule schedule = make_schedule(
                                make_training(kind, spec.n, spec.zc_root), rec.np, cell_rng);
                            const double sigma = snr_to_sigma(rec.snr_db);
                            const MeasurementSet ms =
                                simulate(ch.h, schedule, sigma,
                                         derive_seed(rec.seed, {0x6e6f697365ull /*"noise"*/}));
                            const LikelihoodContext ctx = make_context(ms, spec.sigma_clip);
                            EstimatorConfig cfg = default_config(schedule, beta);
                            cfg.t_max = spec.t_max;
                            cfg.epsilon = spec.epsilon;
                            if (spec.eta0_override > 0.0) cfg.eta0 = spec.eta0_override;
                            if (spec.frobenius_radius > 0.0)
                                cfg.frobenius_radius = spec.frobenius_radius;

                            const auto t0 = std::chrono::steady_clock::now();
                            EstimateResult est;
                            switch (algo) {
                                case Algorithm::Pga:
                                    est = pga_estimate(ctx, schedule.block, cfg);
                                    break;
                                case Algorithm::Fw:
                                    est = fw_estimate(ctx, schedule.block, cfg);
                                    break;
                                case Algorithm::MlFrobenius:
                                    est = ml_frobenius_estimate(ctx, schedule.block, cfg);
                                    break;
                            }
                            const auto t1 = std::chrono::steady_clock::now();
                            rec.wall_time_ms =
                                spec.measure_time
                                    ? std::chrono::duration<double, std::milli>(t1 - t0).count()
                                    : 0.0;
                            rec.iterations = est.iterations;
                            rec.nmse_db = nmse(ch.h, est.h_hat, spec.kappa_real).db;
                        } catch (const std::exception& e) {
                            rec.error = true;
                            rec.error_msg = e.what();
                            rec.nmse_db = std::numeric_limits<double>::quiet_NaN();
                        }
                        records.push_back(std::move(rec));
                    }
                }
            }
        }
    }

    // canonical order, independent of generation strategy
    std::stable_sort(records.begin(), records.end(),
                     [](const ResultRecord& a, const ResultRecord& b) {
                         if (a.channel_id != b.channel_id) return a.channel_id < b.channel_id;
                         if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
                         if (a.training != b.training) return a.training < b.training;
                         if (a.snr_db != b.snr_db) return a.snr_db < b.snr_db;
                         return a.np < b.np;
                     });
    return records;
}

bool any_error(const std::vector<ResultRecord>& records) {
    for (const ResultRecord& r : records)
        if (r.error) return true;
    return false;
}

std::string records_to_csv(const std::vector<ResultRecord>& records) {
    std::string out = "channel_id,algorithm,training,snr_db,np,nmse_db,iterations,wall_time_ms,seed\n";
    for (const ResultRecord& r : records) {
        out += std::to_string(r.channel_id);
        out += ',';
        out += algorithm_name(r.algorithm);
        out += ',';
        out += training_kind_name(r.training);
        out += ',';
        out += format_double(r.snr_db);
        out += ',';
        out += std::to_string(r.np);
        out += ',';
        out += std::isnan(r.nmse_db) ? "nan" : format_double(r.nmse_db);
        out += ',';
        out += std::to_string(r.iterations);
        out += ',';
        out += format_fixed3(r.wall_time_ms);
        out += ',';
        out += std::to_string(r.seed);
        out += '\n';
    }
    return out;
}

std::string records_to_json(const std::vector<ResultRecord>& records) {
    nlohmann::json arr = nlohmann::json::array();
    for (const ResultRecord& r : records) {
        nlohmann::json j{{"channel_id", r.channel_id},
                         {"algorithm", algorithm_name(r.algorithm)},
                         {"training", training_kind_name(r.training)},
                         {"snr_db", r.snr_db},
                         {"np", r.np},
                         {"iterations", r.iterations},
                         {"wall_time_ms", r.wall_time_ms},
                         {"seed", r.seed}};
        if (std::isnan(r.nmse_db))
            j["nmse_db"] = nullptr;
        else
            j["nmse_db"] = r.nmse_db;
        if (r.error) j["error"] = r.error_msg;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

}  // namespace onebit
