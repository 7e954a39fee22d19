#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polarforge/avector.hpp"
#include "polarforge/construct.hpp"
#include "polarforge/sim.hpp"

namespace polarforge {

// A_d by codeword weight d; counts sum to 2^ones(A)
struct WeightSpectrum {
    std::vector<std::uint64_t> count;  // index = weight, length N+1

    std::uint32_t min_nonzero_weight() const;
    std::uint64_t total() const;
};

// exhaustive over all 2^k messages, Gray-style incremental updates
WeightSpectrum weight_enumerator_bruteforce(const AVector& a, int workers = 1);

// Positions sorted by descending Z, laid row-major into an
// (N/width) x width grid of frozen flags (true = frozen). inversions
// counts information cells sitting in the worst N-k slots.
struct FrozenChart {
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint8_t> frozen;  // row-major, 1 = frozen
    std::size_t inversions = 0;
};

FrozenChart frozen_channel_chart(const AVector& a, const ReliabilityVector& z, std::size_t width);

void write_chart_csv(std::ostream& os, const FrozenChart& chart);
void write_chart_pgm(std::ostream& os, const FrozenChart& chart);  // frozen = black

// Minimum grid SNR reaching the target error rate per (code, decoder)
// cell; empty cell = not met anywhere on the grid ("> max").
struct MismatchTable {
    std::vector<std::string> row_labels;  // constructions
    std::vector<std::string> col_labels;  // decoders
    std::vector<std::optional<double>> min_snr_db;  // row-major

    const std::optional<double>& cell(std::size_t r, std::size_t c) const {
        return min_snr_db[r * col_labels.size() + c];
    }
};

MismatchTable mismatch_table(const std::vector<std::pair<std::string, AVector>>& constructions,
                             const std::vector<DecoderConfig>& decoders, double target_error,
                             FitnessMetric metric, const std::vector<double>& snr_grid_db,
                             const CodeSpec& spec, ChannelKind channel, const StoppingRule& stop,
                             std::uint64_t seed, int workers);

void write_mismatch_csv(std::ostream& os, const MismatchTable& table);

}  // namespace polarforge
