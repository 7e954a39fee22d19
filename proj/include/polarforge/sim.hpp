#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "polarforge/avector.hpp"
#include "polarforge/channel.hpp"
#include "polarforge/code_spec.hpp"
#include "polarforge/decoder.hpp"

namespace polarforge {

enum class FitnessMetric { ber, bler };

std::string to_string(FitnessMetric m);

// run ends at the first satisfied rule, checked at round granularity
struct StoppingRule {
    std::uint64_t min_block_errors = 100;
    std::uint64_t max_frames = 1'000'000;
};

struct SimPoint {
    double channel_param = 0.0;  // Eb/N0 in dB, or epsilon for the BEC
    std::uint64_t frames = 0;
    std::uint64_t bit_errs = 0;      // payload bits only
    std::uint64_t bit_errs_sq = 0;   // sum of squared per-frame bit errors
    std::uint64_t blk_errs = 0;
    double ber = 0.0;
    double bler = 0.0;
    double avg_iters = 0.0;       // BP only, 0 otherwise
    double wall_seconds = 0.0;
    std::uint64_t seed = 0;
    std::string decoder_desc;

    double rate_of(FitnessMetric m) const { return m == FitnessMetric::ber ? ber : bler; }
};

struct SimTask {
    CodeSpec spec;
    AVector a;
    DecoderConfig decoder;
    ChannelConfig channel;
    bool all_zero = false;  // transmit the all-zero codeword instead of random payloads
};

// Deterministic for a fixed seed regardless of worker count: every frame
// index owns its RNG stream and integer counters merge associatively.
SimPoint run_point(const SimTask& task, const StoppingRule& stop, std::uint64_t seed, int workers);

// exactly one axis may be non-empty
struct SweepGrid {
    std::vector<double> snr_db;
    std::vector<double> epsilon;
    std::vector<int> bp_iters;
    std::vector<int> list_sizes;
};

std::vector<SimPoint> run_sweep(const SimTask& base, const SweepGrid& grid,
                                const StoppingRule& stop, std::uint64_t seed, int workers);

// CSV schema: snr_db,frames,bit_errs,blk_errs,ber,bler,avg_iters,seed
void write_sim_csv(std::ostream& os, const std::vector<SimPoint>& points);

}  // namespace polarforge
