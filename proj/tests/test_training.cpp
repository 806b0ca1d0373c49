#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "onebit/channel.hpp"
#include "onebit/serialize.hpp"
#include "onebit/training.hpp"

using namespace onebit;

namespace {

double unitarity_defect(const CMat& s) {
    return (s * s.adjoint() - CMat::identity(s.rows())).frobenius_norm();
}

CMat ones_channel(std::size_t n) {
    CMat h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = 1.0;
    return h;
}

}  // namespace

TEST_CASE("dft_training: 2-point block and unitarity") {
    const TrainingBlock s2 = dft_training(2);
    CHECK(std::abs(s2.s(0, 0) - cplx{M_SQRT1_2, 0.0}) < 1e-15);
    CHECK(std::abs(s2.s(0, 1) - cplx{M_SQRT1_2, 0.0}) < 1e-15);
    CHECK(std::abs(s2.s(1, 0) - cplx{M_SQRT1_2, 0.0}) < 1e-15);
    CHECK(std::abs(s2.s(1, 1) - cplx{-M_SQRT1_2, 0.0}) < 1e-12);

    for (std::size_t n : {8u, 16u, 32u, 64u}) {
        CAPTURE(n);
        CHECK(unitarity_defect(dft_training(n).s) < 1e-10);
    }
}

TEST_CASE("zc_training: constant modulus, unitarity, coprime root") {
    for (std::size_t n : {8u, 16u, 32u, 64u}) {
        const TrainingBlock zc = zc_training(n);
        CAPTURE(n);
        CHECK(unitarity_defect(zc.s) < 1e-10);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                CHECK(std::abs(zc.s(i, j)) ==
                      doctest::Approx(1.0 / std::sqrt(double(n))).epsilon(1e-12));
    }
    // odd length uses the m(m+1) exponent
    CHECK(unitarity_defect(zc_training(15, 2).s) < 1e-10);
    CHECK(unitarity_defect(zc_training(16, 5).s) < 1e-10);
    CHECK_THROWS_AS(zc_training(16, 4), std::invalid_argument);
}

TEST_CASE("pseudo-channel extremes for the all-ones channel") {
    const std::size_t n = 16;
    const CMat h = ones_channel(n);
    const CMat g_dft = h * dft_training(n).s;
    CHECK(g_dft.max_abs() == doctest::Approx(4.0).epsilon(1e-9));

    const CMat g_zc = h * zc_training(n).s;
    CHECK(g_zc.max_abs() == doctest::Approx(1.0).epsilon(1e-9));
    // every ZC pseudo-channel entry has unit magnitude here
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            CHECK(std::abs(g_zc(i, j)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("unitary training preserves the frobenius norm of the channel") {
    Rng rng(15);
    for (int i = 0; i < 20; ++i) {
        const ChannelRealization ch = generate_channel(16, 3, rng);
        CHECK(std::fabs((ch.h * dft_training(16).s).frobenius_norm() - ch.h.frobenius_norm()) <
              1e-9);
        CHECK(std::fabs((ch.h * zc_training(16).s).frobenius_norm() - ch.h.frobenius_norm()) <
              1e-9);
    }
}

TEST_CASE("schedule_full") {
    const PilotSchedule s = schedule_full(dft_training(16));
    REQUIRE(s.np() == 16);
    CHECK(s.num_offsets == 1);
    CHECK(s.offsets[0] == 0.0);
    for (std::size_t k = 0; k < 16; ++k) {
        CHECK(s.entries[k].column == k);
        CHECK(s.entries[k].offset_index == 0);
    }
}

TEST_CASE("schedule_subsample") {
    Rng rng1(5), rng2(5);
    const PilotSchedule a = schedule_subsample(zc_training(16), 8, rng1);
    REQUIRE(a.np() == 8);
    std::set<std::size_t> seen;
    for (const ScheduleEntry& e : a.entries) {
        CHECK(e.offset_index == 0);
        CHECK(e.column < 16);
        seen.insert(e.column);
    }
    CHECK(seen.size() == 8);  // distinct

    const PilotSchedule b = schedule_subsample(zc_training(16), 8, rng2);
    for (std::size_t i = 0; i < 8; ++i) CHECK(a.entries[i].column == b.entries[i].column);

    // one column absent at np = n-1
    Rng rng3(9);
    const PilotSchedule c = schedule_subsample(zc_training(16), 15, rng3);
    std::set<std::size_t> cols;
    for (const ScheduleEntry& e : c.entries) cols.insert(e.column);
    CHECK(cols.size() == 15);

    Rng rng4(1);
    CHECK_THROWS_AS(schedule_subsample(zc_training(16), 16, rng4), std::invalid_argument);
    CHECK_THROWS_AS(schedule_subsample(zc_training(16), 0, rng4), std::invalid_argument);
}

TEST_CASE("schedule_offsets") {
    const PilotSchedule b4 = schedule_offsets(zc_training(16), 4);
    REQUIRE(b4.offsets.size() == 4);
    CHECK(b4.offsets[0] == 0.0);
    CHECK(b4.offsets[1] == doctest::Approx(M_PI / 8).epsilon(1e-15));
    CHECK(b4.offsets[2] == doctest::Approx(M_PI / 4).epsilon(1e-15));
    CHECK(b4.offsets[3] == doctest::Approx(3 * M_PI / 8).epsilon(1e-15));
    REQUIRE(b4.np() == 64);
    // block-by-block ordering, every (column, offset) pair exactly once
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t j = 0; j < 64; ++j) {
        CHECK(b4.entries[j].offset_index == j / 16);
        CHECK(b4.entries[j].column == j % 16);
        pairs.insert({b4.entries[j].column, b4.entries[j].offset_index});
    }
    CHECK(pairs.size() == 64);

    const PilotSchedule b1 = schedule_offsets(dft_training(16), 1);
    const PilotSchedule full = schedule_full(dft_training(16));
    REQUIRE(b1.np() == full.np());
    for (std::size_t j = 0; j < 16; ++j) {
        CHECK(b1.entries[j].column == full.entries[j].column);
        CHECK(b1.entries[j].offset_index == full.entries[j].offset_index);
    }

    const PilotSchedule b2 = schedule_offsets(zc_training(16), 2);
    CHECK(b2.np() == 32);
    std::size_t at0 = 0, at1 = 0;
    for (const ScheduleEntry& e : b2.entries) (e.offset_index == 0 ? at0 : at1)++;
    CHECK(at0 == 16);
    CHECK(at1 == 16);
}

TEST_CASE("median PAR of the pseudo-channel: zc below dft") {
    const ChannelSet set = generate_channel_set(16, 3, 100, 2024);
    const TrainingBlock dft = dft_training(16), zc = zc_training(16);
    std::vector<double> par_dft, par_zc;
    auto par = [](const CMat& g) {
        double peak = 0.0, sum = 0.0;
        for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t j = 0; j < g.cols(); ++j) {
                peak = std::max(peak, std::abs(g(i, j)));
                sum += std::abs(g(i, j));
            }
        return 20.0 * std::log10(peak / (sum / double(g.size())));
    };
    for (const ChannelRealization& ch : set.channels) {
        par_dft.push_back(par(ch.h * dft.s));
        par_zc.push_back(par(ch.h * zc.s));
    }
    std::sort(par_dft.begin(), par_dft.end());
    std::sort(par_zc.begin(), par_zc.end());
    MESSAGE("median PAR dft: ", par_dft[50], " dB, zc: ", par_zc[50], " dB");
    CHECK(par_zc[50] < par_dft[50]);
}

TEST_CASE("schedule JSON round trip") {
    Rng rng(31);
    const PilotSchedule s = schedule_subsample(zc_training(16, 3), 7, rng);
    const PilotSchedule back = schedule_from_json(schedule_to_json(s));
    CHECK(back.block.kind == TrainingKind::ZcCirculant);
    CHECK(back.block.zc_root == 3);
    CHECK(max_abs_diff(back.block.s, s.block.s) == 0.0);
    REQUIRE(back.np() == s.np());
    for (std::size_t j = 0; j < s.np(); ++j) {
        CHECK(back.entries[j].column == s.entries[j].column);
        CHECK(back.entries[j].offset_index == s.entries[j].offset_index);
    }
}
