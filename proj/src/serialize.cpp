#include "onebit/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace onebit {

namespace {

using nlohmann::json;

json cmat_to_json(const CMat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

TrainingKind kind_from_name(const std::string& name) {
    if (name == "dft") return TrainingKind::Dft;
    if (name == "zc") return TrainingKind::ZcCirculant;
    throw std::invalid_argument("unknown training kind: " + name);
}

// two bits per complex entry: bit0 = real sign, bit1 = imag sign (set = +1)
std::string pack_bits(const MeasurementSet& ms) {
    static const char* hex = "0123456789abcdef";
    const std::size_t total = ms.bits_re.size();
    std::string out;
    out.reserve((total + 1) / 2);
    for (std::size_t i = 0; i < total; i += 2) {
        unsigned nib = 0;
        if (ms.bits_re[i] > 0) nib |= 1u;
        if (ms.bits_im[i] > 0) nib |= 2u;
        if (i + 1 < total) {
            if (ms.bits_re[i + 1] > 0) nib |= 4u;
            if (ms.bits_im[i + 1] > 0) nib |= 8u;
        }
        out.push_back(hex[nib]);
    }
    return out;
}

void unpack_bits(const std::string& packed, MeasurementSet& ms, std::size_t total) {
    ms.bits_re.resize(total);
    ms.bits_im.resize(total);
    auto hexval = [](char c) -> unsigned {
        if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
        if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
        throw std::invalid_argument("bad hex digit in packed bits");
    };
    for (std::size_t i = 0; i < total; ++i) {
        const unsigned nib = hexval(packed.at(i / 2));
        const unsigned shift = (i % 2) * 2;
        ms.bits_re[i] = (nib >> shift) & 1u ? 1.0 : -1.0;
        ms.bits_im[i] = (nib >> (shift + 1)) & 1u ? 1.0 : -1.0;
    }
}

json schedule_to_json_obj(const PilotSchedule& s) {
    json entries = json::array();
    for (const ScheduleEntry& e : s.entries)
        entries.push_back(json::array({e.column, e.offset_index}));
    return json{{"kind", training_kind_name(s.block.kind)},
                {"zc_root", s.block.zc_root},
                {"N", s.n()},
                {"B", s.num_offsets},
                {"entries", std::move(entries)}};
}

PilotSchedule schedule_from_json_obj(const json& j) {
    PilotSchedule s;
    const TrainingKind kind = kind_from_name(j.at("kind").get<std::string>());
    const std::size_t n = j.at("N").get<std::size_t>();
    s.block = kind == TrainingKind::Dft ? dft_training(n)
                                        : zc_training(n, j.at("zc_root").get<std::size_t>());
    s.num_offsets = j.at("B").get<std::size_t>();
    s.offsets = phase_offsets(s.num_offsets);
    for (const json& e : j.at("entries"))
        s.entries.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>()});
    return s;
}

}  // namespace

std::string channel_set_to_json(const ChannelSet& set) {
    json chans = json::array();
    for (const ChannelRealization& ch : set.channels) {
        json gains = json::array();
        for (const cplx& g : ch.gains) gains.push_back(json::array({g.real(), g.imag()}));
        chans.push_back(json{{"gains", std::move(gains)}, {"aoa", ch.aoa}, {"aod", ch.aod}});
    }
    const json j{{"N", set.n}, {"L", set.paths}, {"seed", set.seed},
                 {"channels", std::move(chans)}};
    return j.dump(2) + "\n";
}

ChannelSet channel_set_from_json(const std::string& text) {
    const json j = json::parse(text);
    ChannelSet set;
    set.n = j.at("N").get<std::size_t>();
    set.paths = j.at("L").get<std::size_t>();
    set.seed = j.at("seed").get<std::uint64_t>();
    for (const json& cj : j.at("channels")) {
        ChannelRealization ch;
        for (const json& g : cj.at("gains"))
            ch.gains.push_back(cplx{g.at(0).get<double>(), g.at(1).get<double>()});
        ch.aoa = cj.at("aoa").get<std::vector<double>>();
        ch.aod = cj.at("aod").get<std::vector<double>>();
        ch.num_paths = ch.gains.size();
        ch.h = rebuild_channel(set.n, ch.gains, ch.aoa, ch.aod);
        set.channels.push_back(std::move(ch));
    }
    return set;
}

std::string schedule_to_json(const PilotSchedule& schedule) {
    return schedule_to_json_obj(schedule).dump(2) + "\n";
}

PilotSchedule schedule_from_json(const std::string& text) {
    return schedule_from_json_obj(json::parse(text));
}

std::string measurement_to_json(const MeasurementSet& ms) {
    const json j{{"schedule", schedule_to_json_obj(ms.schedule)},
                 {"sigma", ms.sigma},
                 {"seed", ms.seed},
                 {"rows", ms.rows},
                 {"bits", pack_bits(ms)}};
    return j.dump(2) + "\n";
}

MeasurementSet measurement_from_json(const std::string& text) {
    const json j = json::parse(text);
    MeasurementSet ms;
    ms.schedule = schedule_from_json_obj(j.at("schedule"));
    ms.sigma = j.at("sigma").get<double>();
    ms.seed = j.at("seed").get<std::uint64_t>();
    ms.rows = j.at("rows").get<std::size_t>();
    unpack_bits(j.at("bits").get<std::string>(), ms, ms.rows * ms.schedule.np());
    return ms;
}

std::string estimate_to_json(const EstimateResult& est) {
    const json j{{"g_hat", cmat_to_json(est.g_hat)},
                 {"h_hat", cmat_to_json(est.h_hat)},
                 {"iterations", est.iterations},
                 {"likelihood_trace", est.likelihood_trace},
                 {"step_halvings", est.step_halvings},
                 {"converged_by",
                  est.converged_by == ConvergedBy::StoppingRule ? "stopping_rule" : "t_max"}};
    return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << contents;
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace onebit
