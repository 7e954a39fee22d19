#include <doctest.h>

#include <cmath>
#include <sstream>

#include "polarforge/construct.hpp"
#include "polarforge/sim.hpp"

using namespace polarforge;

namespace {

SimTask bec_task(std::uint32_t N, std::uint32_t k, double eps, DecoderKind dec = DecoderKind::sc) {
    SimTask t;
    t.spec = CodeSpec::make(N, k);
    t.a = construct_bhattacharyya_eps(t.spec, eps > 0 ? eps : 0.3);
    t.decoder.kind = dec;
    t.channel.kind = ChannelKind::bec;
    t.channel.epsilon = eps;
    return t;
}

SimTask awgn_task(std::uint32_t N, std::uint32_t k, double snr, DecoderKind dec,
                  int list_size = 8) {
    SimTask t;
    t.spec = CodeSpec::make(N, k);
    t.a = construct_bhattacharyya(t.spec, snr);
    t.decoder.kind = dec;
    t.decoder.list_size = list_size;
    t.channel.kind = ChannelKind::awgn;
    t.channel.ebn0_db = snr;
    t.channel.rate = t.spec.rate();
    return t;
}

}  // namespace

TEST_CASE("an erasure-free bec run is error free") {
    auto task = bec_task(16, 8, 0.0);
    auto pt = run_point(task, {100, 5000}, 1, 1);
    CHECK(pt.frames == 5000);  // no errors, so the frame cap rules
    CHECK(pt.bit_errs == 0);
    CHECK(pt.blk_errs == 0);
    CHECK(pt.ber == 0.0);
    CHECK(pt.bler == 0.0);
}

TEST_CASE("uncoded point reproduces the gaussian tail") {
    // N=1, k=1, rate accounting 1: sigma^2 = 1/2, BER = Q(sqrt(2))
    SimTask t;
    t.spec = CodeSpec::make(1, 1);
    t.a = AVector::from_positions(1, {1});
    t.decoder.kind = DecoderKind::sc;
    t.channel.kind = ChannelKind::awgn;
    t.channel.ebn0_db = 0.0;
    t.channel.rate = 1.0;
    auto pt = run_point(t, {1u << 30, 100000}, 2024, 2);
    CHECK(pt.frames == 100000);
    CHECK(std::fabs(pt.ber - 0.0786496) < 0.002);
}

TEST_CASE("worker count never changes the counters") {
    auto task = awgn_task(32, 16, 2.0, DecoderKind::scl, 4);
    auto p1 = run_point(task, {200, 20000}, 99, 1);
    auto p8 = run_point(task, {200, 20000}, 99, 8);
    CHECK(p1.frames == p8.frames);
    CHECK(p1.bit_errs == p8.bit_errs);
    CHECK(p1.bit_errs_sq == p8.bit_errs_sq);
    CHECK(p1.blk_errs == p8.blk_errs);
}

TEST_CASE("estimator stays inside binomial bounds") {
    // N=1 BEC(theta): an erased bit resolves to 0 and the payload bit is
    // uniform, so the frame errors with probability exactly theta/2
    double theta = 0.3;
    SimTask t;
    t.spec = CodeSpec::make(1, 1);
    t.a = AVector::from_positions(1, {1});
    t.decoder.kind = DecoderKind::sc;
    t.channel.kind = ChannelKind::bec;
    t.channel.epsilon = theta;

    std::uint64_t frames = 8192;
    double p = theta / 2;
    double sigma = std::sqrt(p * (1 - p) / static_cast<double>(frames));
    int inside = 0;
    for (int rep = 0; rep < 100; ++rep) {
        auto pt = run_point(t, {1u << 30, frames}, 1000 + rep, 1);
        if (std::fabs(pt.bler - p) <= 3 * sigma) ++inside;
    }
    CHECK(inside >= 95);  // 99% expected within 3 sigma
}

TEST_CASE("stopping rules bind at round granularity") {
    auto task = awgn_task(16, 8, 0.0, DecoderKind::sc);
    auto by_errors = run_point(task, {10, 1u << 20}, 5, 2);
    CHECK(by_errors.blk_errs >= 10);
    CHECK(by_errors.frames < (1u << 20));
    auto by_frames = run_point(task, {1u << 30, 2000}, 5, 2);
    CHECK(by_frames.frames == 2000);
}

TEST_CASE("single-entry sweep equals run_point") {
    auto task = awgn_task(16, 8, 1.0, DecoderKind::sc);
    SweepGrid grid;
    grid.snr_db = {1.0};
    auto sweep = run_sweep(task, grid, {50, 5000}, 7, 2);
    auto point = run_point(task, {50, 5000}, 7, 2);
    REQUIRE(sweep.size() == 1);
    CHECK(sweep[0].frames == point.frames);
    CHECK(sweep[0].bit_errs == point.bit_errs);
    CHECK(sweep[0].blk_errs == point.blk_errs);
}

TEST_CASE("bp iteration sweep on clean frames stops after one iteration") {
    auto task = bec_task(16, 8, 0.0, DecoderKind::bp);
    SweepGrid grid;
    grid.bp_iters = {1, 2, 4};
    auto pts = run_sweep(task, grid, {100, 1000}, 3, 1);
    REQUIRE(pts.size() == 3);
    for (const auto& p : pts) {
        CHECK(p.blk_errs == 0);
        CHECK(p.avg_iters == doctest::Approx(1.0));
    }
}

TEST_CASE("scl list sweep is monotone under common random numbers") {
    auto task = awgn_task(16, 8, 3.0, DecoderKind::scl);
    SweepGrid grid;
    grid.list_sizes = {1, 2, 4, 8};
    auto pts = run_sweep(task, grid, {1u << 30, 30000}, 11, 2);
    REQUIRE(pts.size() == 4);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) CHECK(pts[i].bler >= pts[i + 1].bler);
}

TEST_CASE("sweeps demand exactly one axis") {
    auto task = awgn_task(16, 8, 1.0, DecoderKind::sc);
    SweepGrid none;
    CHECK_THROWS_AS(run_sweep(task, none, {10, 100}, 1, 1), std::invalid_argument);
    SweepGrid two;
    two.snr_db = {1.0};
    two.list_sizes = {2};
    CHECK_THROWS_AS(run_sweep(task, two, {10, 100}, 1, 1), std::invalid_argument);
}

TEST_CASE("configuration inconsistencies fail before any frame runs") {
    auto task = awgn_task(16, 8, 1.0, DecoderKind::sc);
    task.a = AVector(8);  // wrong length
    CHECK_THROWS_AS(run_point(task, {10, 100}, 1, 1), std::invalid_argument);

    auto ml = awgn_task(64, 32, 1.0, DecoderKind::ml);
    CHECK_THROWS_AS(run_point(ml, {10, 100}, 1, 1), std::invalid_argument);

    auto crcless = awgn_task(16, 8, 1.0, DecoderKind::scl_crc);
    CHECK_THROWS_AS(run_point(crcless, {10, 100}, 1, 1), std::invalid_argument);

    auto bad_stop = awgn_task(16, 8, 1.0, DecoderKind::sc);
    CHECK_THROWS_AS(run_point(bad_stop, {0, 100}, 1, 1), std::invalid_argument);
}

TEST_CASE("csv schema is stable") {
    auto task = bec_task(8, 4, 0.0);
    auto pt = run_point(task, {10, 128}, 21, 1);
    std::ostringstream os;
    write_sim_csv(os, {pt});
    std::istringstream is(os.str());
    std::string header, row;
    std::getline(is, header);
    std::getline(is, row);
    CHECK(header == "snr_db,frames,bit_errs,blk_errs,ber,bler,avg_iters,seed");
    CHECK(row == "0,128,0,0,0,0,0,21");
}

TEST_CASE("all-zero shortcut transmits the zero codeword") {
    auto task = awgn_task(16, 8, 12.0, DecoderKind::sc);
    task.all_zero = true;
    auto pt = run_point(task, {5, 512}, 2, 1);
    CHECK(pt.blk_errs == 0);  // at 12 dB the zero word always survives
}

TEST_CASE("crc-aided scl runs under the sim and counts payload bits") {
    SimTask t;
    t.spec = CodeSpec::make(64, 16, CodeSpec::default_crc(16));
    t.a = construct_bhattacharyya_eps(t.spec, 0.4);
    t.decoder.kind = DecoderKind::scl_crc;
    t.decoder.list_size = 4;
    t.channel.kind = ChannelKind::awgn;
    t.channel.ebn0_db = 2.0;
    t.channel.rate = t.spec.rate();
    auto pt = run_point(t, {50, 8192}, 77, 2);
    CHECK(pt.frames >= 4096);
    CHECK(pt.ber <= 1.0);
    CHECK(pt.decoder_desc == "scl-crc(L=4)");
}
