#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "onebit/channel.hpp"
#include "onebit/estimators.hpp"
#include "onebit/training.hpp"

namespace onebit {

enum class Algorithm { Pga, Fw, MlFrobenius };

const char* algorithm_name(Algorithm a);

enum class BetaMode { Fixed, Percentile90 };

// One full evaluation protocol: channels x SNR grid x pilot grid x training
// kinds x algorithms, all derived deterministically from master_seed.
struct ExperimentSpec {
    std::size_t n = 16;
    std::size_t paths = 3;
    std::size_t num_channels = 50;
    std::vector<double> snr_db_grid = {0.0};
    std::vector<std::size_t> pilot_grid = {64};
    std::vector<TrainingKind> training_kinds = {TrainingKind::ZcCirculant};
    std::vector<Algorithm> algorithms = {Algorithm::Pga};
    BetaMode beta_mode = BetaMode::Percentile90;
    double beta_value = 20.1;  // used when beta_mode == Fixed
    std::uint64_t master_seed = 1;
    double sigma_clip = 0.5;
    double eta0_override = 0.0;       // 0 = auto (0.1/B)
    std::size_t t_max = 80;
    double epsilon = 1e-10;
    double frobenius_radius = 0.0;    // 0 = auto (N)
    std::size_t zc_root = 1;
    bool kappa_real = false;          // real-restricted NMSE scaling
    bool measure_time = true;         // false pins wall_time_ms to 0 for strict byte-identity
};

struct ResultRecord {
    std::size_t channel_id = 0;
    Algorithm algorithm = Algorithm::Pga;
    TrainingKind training = TrainingKind::ZcCirculant;
    double snr_db = 0.0;
    std::size_t np = 0;
    double nmse_db = 0.0;
    std::size_t iterations = 0;
    double wall_time_ms = 0.0;
    std::uint64_t seed = 0;
    bool error = false;
    std::string error_msg;
};

struct NmseValue {
    double db = 0.0;
    bool floored = false;     // exact reconstruction reported at the -300 dB floor
    bool degenerate = false;  // H_hat = 0, scaling undefined
};

// 10 log10(||H - kappa H_hat||_F^2 / ||H||_F^2) with the least-squares
// scalar kappa = <H_hat, H> / ||H_hat||_F^2 (complex by default).
NmseValue nmse(const CMat& h, const CMat& h_hat, bool real_kappa = false);

// 20 log10(max|G| / mean|G|)
double peak_to_average_ratio_db(const CMat& g);

// 90th percentile (linear interpolation) of the channel nuclear norms.
double beta_percentile_90(const ChannelSet& channels);

std::vector<ResultRecord> run_experiment(const ExperimentSpec& spec);

bool any_error(const std::vector<ResultRecord>& records);

// CSV columns: channel_id,algorithm,training,snr_db,np,nmse_db,iterations,
// wall_time_ms,seed (header mandatory, LF endings). Failed cells carry
// nmse_db = nan and keep the row shape.
std::string records_to_csv(const std::vector<ResultRecord>& records);
std::string records_to_json(const std::vector<ResultRecord>& records);

}  // namespace onebit
