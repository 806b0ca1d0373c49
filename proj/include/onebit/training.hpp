#pragma once

#include <cstddef>
#include <vector>

#include "onebit/cmat.hpp"
#include "onebit/rng.hpp"

namespace onebit {

enum class TrainingKind { Dft, ZcCirculant };

// Unitary N x N pilot block; columns are transmitted one per channel use.
struct TrainingBlock {
    CMat s;
    TrainingKind kind = TrainingKind::Dft;
    std::size_t zc_root = 0;  // ZC only

    std::size_t n() const { return s.rows(); }
};

// S_{k,l} = exp(-j 2 pi k l / N) / sqrt(N)
TrainingBlock dft_training(std::size_t n);

// Column k is the k-step cyclic downshift of the unit-norm Zadoff-Chu
// sequence z_m = exp(-j pi root m^2 / N)/sqrt(N) (even N; m(m+1) for odd N).
// root must be coprime to N.
TrainingBlock zc_training(std::size_t n, std::size_t root = 1);

struct ScheduleEntry {
    std::size_t column;        // column of S
    std::size_t offset_index;  // b
};

// Which pilots are sent: schedule entry j = (column k, offset b) means column
// k of S scaled by exp(j theta_b) is the j-th transmission.
// theta_b = pi b / (2 B).
struct PilotSchedule {
    TrainingBlock block;
    std::vector<ScheduleEntry> entries;
    std::vector<double> offsets;
    std::size_t num_offsets = 1;  // B

    std::size_t np() const { return entries.size(); }
    std::size_t n() const { return block.n(); }
};

PilotSchedule schedule_full(TrainingBlock block);

// np < n distinct columns drawn uniformly without replacement.
PilotSchedule schedule_subsample(TrainingBlock block, std::size_t np, Rng& rng);

// np = b*n entries, block-by-block: all columns at theta_0, then theta_1, ...
PilotSchedule schedule_offsets(TrainingBlock block, std::size_t b);

std::vector<double> phase_offsets(std::size_t b);

const char* training_kind_name(TrainingKind k);

}  // namespace onebit
