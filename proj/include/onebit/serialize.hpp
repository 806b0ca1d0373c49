#pragma once

#include <string>

#include "onebit/channel.hpp"
#include "onebit/estimators.hpp"
#include "onebit/measurement.hpp"
#include "onebit/training.hpp"

namespace onebit {

// Channel sets store only the generating metadata; H is rebuilt on load.
// {n, paths, seed, channels: [{gains: [[re, im]...], aoa: [...], aod: [...]}]}
std::string channel_set_to_json(const ChannelSet& set);
ChannelSet channel_set_from_json(const std::string& text);

// {kind, zc_root, n, b, entries: [[column, offset_index]...]}
std::string schedule_to_json(const PilotSchedule& schedule);
PilotSchedule schedule_from_json(const std::string& text);

// Bits packed two per complex entry (bit set = +1), hex-encoded.
std::string measurement_to_json(const MeasurementSet& ms);
MeasurementSet measurement_from_json(const std::string& text);

// Matrices as row-major [re, im] pair arrays; trace as a real array.
std::string estimate_to_json(const EstimateResult& est);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace onebit
