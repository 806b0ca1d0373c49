// Experiment runner CLI: seeded channel generation, estimator sweeps and
// peak-to-average reports, emitting CSV or JSON.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "onebit/experiment.hpp"
#include "onebit/kernels.hpp"
#include "onebit/serialize.hpp"

namespace {

using namespace onebit;

struct CommonArgs {
    std::size_t n = 16;
    std::size_t paths = 3;
    std::size_t channels = 50;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
};

struct RunArgs : CommonArgs {
    std::vector<double> snr = {0.0};
    std::vector<std::size_t> pilots;            // default filled per command
    std::vector<std::string> training = {"zc"};
    std::vector<std::string> algo = {"pga"};
    std::string beta = "auto";
    std::size_t tmax = 80;
    double eps = 1e-10;
    double eta0 = 0.0;
    double sigma_clip = 0.5;
    std::string kappa = "complex";
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--n", a.n, "antennas per side");
    cmd->add_option("--paths", a.paths, "propagation paths per channel");
    cmd->add_option("--channels", a.channels, "number of channel realizations");
    cmd->add_option("--seed", a.seed, "master seed");
    cmd->add_option("--out", a.out, "output path (stdout if omitted)");
    cmd->add_option("--format", a.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

void add_run_opts(CLI::App* cmd, RunArgs& a, bool with_snr, bool with_pilots) {
    add_common(cmd, a);
    if (with_snr)
        cmd->add_option("--snr", a.snr, "SNR grid in dB (comma list)")->delimiter(',');
    if (with_pilots)
        cmd->add_option("--pilots", a.pilots, "pilot counts (comma list)")->delimiter(',');
    cmd->add_option("--training", a.training, "training kinds: zc, dft")
        ->delimiter(',')
        ->check(CLI::IsMember({"zc", "dft"}));
    cmd->add_option("--algo", a.algo, "algorithms: pga, fw, mlfro")
        ->delimiter(',')
        ->check(CLI::IsMember({"pga", "fw", "mlfro"}));
    cmd->add_option("--beta", a.beta, "nuclear radius, or 'auto' (90th percentile)");
    cmd->add_option("--tmax", a.tmax, "iteration cap");
    cmd->add_option("--eps", a.eps, "relative stopping threshold");
    cmd->add_option("--eta0", a.eta0, "initial step size (default 0.1/B)");
    cmd->add_option("--sigma-clip", a.sigma_clip, "likelihood noise floor");
    cmd->add_option("--kappa", a.kappa, "NMSE scaling: complex or real")
        ->check(CLI::IsMember({"complex", "real"}));
}

ExperimentSpec spec_from(const RunArgs& a) {
    ExperimentSpec spec;
    spec.n = a.n;
    spec.paths = a.paths;
    spec.num_channels = a.channels;
    spec.snr_db_grid = a.snr;
    spec.pilot_grid = a.pilots.empty() ? std::vector<std::size_t>{4 * a.n} : a.pilots;
    spec.training_kinds.clear();
    for (const std::string& t : a.training)
        spec.training_kinds.push_back(t == "dft" ? TrainingKind::Dft
                                                 : TrainingKind::ZcCirculant);
    spec.algorithms.clear();
    for (const std::string& s : a.algo) {
        if (s == "pga") spec.algorithms.push_back(Algorithm::Pga);
        else if (s == "fw") spec.algorithms.push_back(Algorithm::Fw);
        else spec.algorithms.push_back(Algorithm::MlFrobenius);
    }
    if (a.beta == "auto") {
        spec.beta_mode = BetaMode::Percentile90;
    } else {
        spec.beta_mode = BetaMode::Fixed;
        spec.beta_value = std::stod(a.beta);
    }
    spec.master_seed = a.seed;
    spec.t_max = a.tmax;
    spec.epsilon = a.eps;
    spec.eta0_override = a.eta0;
    spec.sigma_clip = a.sigma_clip;
    spec.kappa_real = a.kappa == "real";
    return spec;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::fputs(text.c_str(), stdout);
    else
        write_file(out_path, text);
}

int run_records(const ExperimentSpec& spec, const CommonArgs& a) {
    const std::vector<ResultRecord> records = run_experiment(spec);
    emit(a.format == "json" ? records_to_json(records) : records_to_csv(records), a.out);
    if (any_error(records)) {
        std::cerr << "warning: some cells failed; see output records\n";
        return 1;
    }
    return 0;
}

int cmd_par_report(const CommonArgs& a, const std::vector<std::string>& training) {
    const ChannelSet set = generate_channel_set(a.n, a.paths, a.channels, a.seed);
    std::vector<TrainingBlock> blocks;
    for (const std::string& t : training)
        blocks.push_back(t == "dft" ? dft_training(a.n) : zc_training(a.n));
    std::string csv = "channel_id,training,par_db\n";
    nlohmann::json arr = nlohmann::json::array();
    std::vector<std::vector<double>> per_kind(blocks.size());
    for (std::size_t ci = 0; ci < set.channels.size(); ++ci) {
        for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
            const double par = peak_to_average_ratio_db(set.channels[ci].h * blocks[bi].s);
            per_kind[bi].push_back(par);
            csv += std::to_string(ci);
            csv += ',';
            csv += training_kind_name(blocks[bi].kind);
            csv += ',';
            csv += std::to_string(par);
            csv += '\n';
            arr.push_back({{"channel_id", ci},
                           {"training", training_kind_name(blocks[bi].kind)},
                           {"par_db", par}});
        }
    }
    emit(a.format == "json" ? arr.dump(2) + "\n" : csv, a.out);
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        std::vector<double> v = per_kind[bi];
        std::sort(v.begin(), v.end());
        std::cerr << "median PAR (" << training_kind_name(blocks[bi].kind)
                  << "): " << v[v.size() / 2] << " dB over " << v.size() << " channels\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"one-bit low-rank MIMO channel estimation experiments"};
    app.require_subcommand(1);

    CommonArgs gen_args;
    CLI::App* gen = app.add_subcommand("generate-channels",
                                       "write a channel set as JSON metadata");
    add_common(gen, gen_args);

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "full grid: channels x SNR x pilots x training x algo");
    add_run_opts(run, run_args, true, true);

    RunArgs snr_args;
    CLI::App* snr = app.add_subcommand("sweep-snr", "NMSE vs SNR at a fixed pilot count");
    snr_args.snr = {-10, -5, 0, 5, 10, 15, 20};
    add_run_opts(snr, snr_args, true, true);

    RunArgs pil_args;
    CLI::App* pil = app.add_subcommand("sweep-pilots", "NMSE vs pilot count at fixed SNR");
    add_run_opts(pil, pil_args, true, true);

    CommonArgs par_args;
    std::vector<std::string> par_training = {"zc", "dft"};
    CLI::App* par = app.add_subcommand("par-report",
                                       "peak-to-average ratio of the pseudo-channel per training");
    add_common(par, par_args);
    par->add_option("--training", par_training, "training kinds to report")
        ->delimiter(',')
        ->check(CLI::IsMember({"zc", "dft"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            const ChannelSet set =
                generate_channel_set(gen_args.n, gen_args.paths, gen_args.channels, gen_args.seed);
            emit(channel_set_to_json(set), gen_args.out);
            return 0;
        }
        if (run->parsed()) return run_records(spec_from(run_args), run_args);
        if (snr->parsed()) return run_records(spec_from(snr_args), snr_args);
        if (pil->parsed()) {
            if (pil_args.pilots.empty())
                pil_args.pilots = {pil_args.n, 2 * pil_args.n, 3 * pil_args.n, 4 * pil_args.n};
            return run_records(spec_from(pil_args), pil_args);
        }
        if (par->parsed()) return cmd_par_report(par_args, par_training);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
