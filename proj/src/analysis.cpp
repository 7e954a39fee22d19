#include "polarforge/analysis.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "polarforge/core.hpp"

namespace polarforge {

std::uint32_t WeightSpectrum::min_nonzero_weight() const {
    for (std::size_t d = 1; d < count.size(); ++d)
        if (count[d]) return static_cast<std::uint32_t>(d);
    return 0;
}

std::uint64_t WeightSpectrum::total() const {
    return std::accumulate(count.begin(), count.end(), std::uint64_t{0});
}

namespace {

// codeword weights over a message counter range; the codeword tracks the
// counter incrementally, one row XOR per flipped message bit
void enumerate_range(const std::vector<BitWord>& rows, std::size_t N, std::uint64_t lo,
                     std::uint64_t hi, std::vector<std::uint64_t>& spectrum) {
    std::size_t K = rows.size();
    BitWord x(N, BitRole::codeword);
    for (std::size_t t = 0; t < K; ++t)
        if ((lo >> t) & 1) x.xor_with(rows[t]);
    std::size_t w = x.popcount();
    spectrum[w]++;
    for (std::uint64_t m = lo + 1; m < hi; ++m) {
        std::uint64_t changed = m ^ (m - 1);
        while (changed) {
            int b = std::countr_zero(changed);
            changed &= changed - 1;
            x.xor_with(rows[b]);
        }
        spectrum[x.popcount()]++;
    }
}

}  // namespace

WeightSpectrum weight_enumerator_bruteforce(const AVector& a, int workers) {
    std::size_t K = a.ones();
    if (K > 28)
        throw std::invalid_argument("weight enumerator: enumeration supports at most 28 information bits");
    std::size_t N = a.size();
    int n = std::countr_zero(N);

    std::vector<BitWord> rows;
    for (auto pos : a.info_positions()) {
        BitWord e(N, BitRole::u_domain);
        e.set(pos, true);
        rows.push_back(polar_transform(e, n));
    }

    WeightSpectrum spec;
    spec.count.assign(N + 1, 0);
    std::uint64_t total = std::uint64_t{1} << K;

    if (workers <= 1 || total < (std::uint64_t{1} << 16)) {
        enumerate_range(rows, N, 0, total, spec.count);
        return spec;
    }

    std::vector<std::vector<std::uint64_t>> partial(workers,
                                                    std::vector<std::uint64_t>(N + 1, 0));
    std::vector<std::thread> threads;
    std::uint64_t chunk = (total + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        std::uint64_t lo = std::min<std::uint64_t>(total, w * chunk);
        std::uint64_t hi = std::min<std::uint64_t>(total, (w + 1) * chunk);
        if (lo >= hi) break;
        threads.emplace_back(
            [&, w, lo, hi] { enumerate_range(rows, N, lo, hi, partial[w]); });
    }
    for (auto& t : threads) t.join();
    for (const auto& p : partial)
        for (std::size_t d = 0; d <= N; ++d) spec.count[d] += p[d];
    return spec;
}

FrozenChart frozen_channel_chart(const AVector& a, const ReliabilityVector& z, std::size_t width) {
    std::size_t N = a.size();
    if (z.z.size() != N)
        throw std::invalid_argument("frozen_channel_chart: Z vector length does not match N");
    if (width == 0 || N % width != 0)
        throw std::invalid_argument("frozen_channel_chart: width must divide N");

    std::vector<std::uint32_t> order(N);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
        if (z.z[x] != z.z[y]) return z.z[x] > z.z[y];  // worst channels first
        return x < y;
    });

    FrozenChart chart;
    chart.cols = width;
    chart.rows = N / width;
    chart.frozen.resize(N);
    std::size_t frozen_slots = N - a.ones();
    for (std::size_t t = 0; t < N; ++t) {
        bool fr = a.is_frozen(order[t]);
        chart.frozen[t] = fr ? 1 : 0;
        if (!fr && t < frozen_slots) ++chart.inversions;
    }
    return chart;
}

void write_chart_csv(std::ostream& os, const FrozenChart& chart) {
    for (std::size_t r = 0; r < chart.rows; ++r) {
        for (std::size_t c = 0; c < chart.cols; ++c) {
            if (c) os << ',';
            os << int(chart.frozen[r * chart.cols + c]);
        }
        os << '\n';
    }
}

void write_chart_pgm(std::ostream& os, const FrozenChart& chart) {
    os << "P5\n" << chart.cols << " " << chart.rows << "\n255\n";
    for (std::uint8_t f : chart.frozen) os.put(f ? '\0' : '\xff');
}

MismatchTable mismatch_table(const std::vector<std::pair<std::string, AVector>>& constructions,
                             const std::vector<DecoderConfig>& decoders, double target_error,
                             FitnessMetric metric, const std::vector<double>& snr_grid_db,
                             const CodeSpec& spec, ChannelKind channel, const StoppingRule& stop,
                             std::uint64_t seed, int workers) {
    if (snr_grid_db.empty())
        throw std::invalid_argument("mismatch_table: SNR grid must be non-empty");
    if (!std::is_sorted(snr_grid_db.begin(), snr_grid_db.end()))
        throw std::invalid_argument("mismatch_table: SNR grid must be ascending");

    MismatchTable table;
    for (const auto& [label, a] : constructions) table.row_labels.push_back(label);
    for (const auto& d : decoders) table.col_labels.push_back(d.describe());

    for (const auto& [label, a] : constructions) {
        for (const auto& dec : decoders) {
            SimTask task;
            task.spec = spec;
            task.a = a;
            task.decoder = dec;
            task.channel.kind = channel;
            task.channel.rate = spec.rate();

            auto rate_at = [&](double snr) {
                task.channel.ebn0_db = snr;
                return run_point(task, stop, seed, workers).rate_of(metric);
            };

            // bisect the grid for the coarsest point meeting the target,
            // assuming the error rate is non-increasing in SNR
            std::optional<double> found;
            std::size_t lo = 0, hi = snr_grid_db.size();
            while (lo < hi) {
                std::size_t mid = (lo + hi) / 2;
                if (rate_at(snr_grid_db[mid]) <= target_error) {
                    found = snr_grid_db[mid];
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            table.min_snr_db.push_back(found);
        }
    }
    return table;
}

void write_mismatch_csv(std::ostream& os, const MismatchTable& table) {
    std::ostringstream line;
    line.precision(17);
    os << "construction";
    for (const auto& c : table.col_labels) os << ',' << c;
    os << '\n';
    for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
        os << table.row_labels[r];
        for (std::size_t c = 0; c < table.col_labels.size(); ++c) {
            os << ',';
            const auto& v = table.cell(r, c);
            if (v) {
                line.str("");
                line << *v;
                os << line.str();
            } else {
                os << ">max";
            }
        }
        os << '\n';
    }
}

}  // namespace polarforge
