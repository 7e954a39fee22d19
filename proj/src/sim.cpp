#include "polarforge/sim.hpp"

#include <chrono>
#include <cmath>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "polarforge/core.hpp"
#include "polarforge/rng.hpp"

namespace polarforge {

std::string to_string(FitnessMetric m) { return m == FitnessMetric::ber ? "ber" : "bler"; }

namespace {

constexpr std::uint64_t kRoundFrames = 4096;  // stopping checked per round

struct Counters {
    std::uint64_t frames = 0, bit_errs = 0, bit_errs_sq = 0, blk_errs = 0, iter_sum = 0;
    void operator+=(const Counters& o) {
        frames += o.frames;
        bit_errs += o.bit_errs;
        bit_errs_sq += o.bit_errs_sq;
        blk_errs += o.blk_errs;
        iter_sum += o.iter_sum;
    }
};

// per-worker decode state; frames are pure functions of (seed, index)
class FrameWorker {
public:
    FrameWorker(const SimTask& task, std::uint64_t seed)
        : task_(task), seed_(seed), message_(task.spec.payload_bits, BitRole::message) {
        switch (task.decoder.kind) {
            case DecoderKind::sc:
                sc_ = std::make_unique<ScDecoder>(task.spec, task.a);
                break;
            case DecoderKind::scl:
            case DecoderKind::scl_crc:
                scl_ = std::make_unique<SclDecoder>(task.spec, task.a, task.decoder.list_size);
                break;
            case DecoderKind::bp:
                bp_ = std::make_unique<BpDecoder>(task.spec, task.a, task.decoder.bp_max_iters,
                                                  task.decoder.bp_min_sum);
                break;
            case DecoderKind::ml:
                ml_ = std::make_unique<MlOracleDecoder>(task.spec, task.a);
                break;
        }
        msg_words_ = (task.spec.payload_bits + 63) / 64;
    }

    void run_range(std::uint64_t lo, std::uint64_t hi, Counters& out) {
        for (std::uint64_t f = lo; f < hi; ++f) out += run_frame(f);
    }

private:
    Counters run_frame(std::uint64_t frame_idx) {
        RngStream rng(seed_, frame_idx);
        std::size_t k = task_.spec.payload_bits;
        if (task_.all_zero) {
            message_.clear();
        } else {
            auto words = message_.words();
            for (std::size_t w = 0; w < msg_words_; ++w) words[w] = rng.next_u64();
            if (k % 64) words[msg_words_ - 1] &= (std::uint64_t{1} << (k % 64)) - 1;
        }
        BitWord x = encode(message_, task_.a, task_.spec);
        make_llr(task_.channel, x, rng, frame_);

        DecodeResult res;
        switch (task_.decoder.kind) {
            case DecoderKind::sc: res = sc_->decode(frame_); break;
            case DecoderKind::scl: res = scl_->decode(frame_); break;
            case DecoderKind::scl_crc: res = scl_->decode_crc(frame_); break;
            case DecoderKind::bp: res = bp_->decode(frame_); break;
            case DecoderKind::ml: res = ml_->decode(frame_); break;
        }

        Counters c;
        c.frames = 1;
        BitWord diff = res.message_hat;
        diff.xor_with(message_);
        std::uint64_t errs = diff.popcount();
        c.bit_errs = errs;
        c.bit_errs_sq = errs * errs;
        c.blk_errs = errs ? 1 : 0;
        c.iter_sum = static_cast<std::uint64_t>(res.iterations_used);
        return c;
    }

    const SimTask& task_;
    std::uint64_t seed_;
    BitWord message_;
    std::size_t msg_words_;
    LlrFrame frame_;
    std::unique_ptr<ScDecoder> sc_;
    std::unique_ptr<SclDecoder> scl_;
    std::unique_ptr<BpDecoder> bp_;
    std::unique_ptr<MlOracleDecoder> ml_;
};

void validate(const SimTask& task, const StoppingRule& stop) {
    if (task.a.size() != task.spec.block_length)
        throw std::invalid_argument("sim: A-vector length does not match N");
    if (task.a.ones() != task.spec.non_frozen_count())
        throw std::invalid_argument("sim: A-vector ones() does not match k (+ CRC width)");
    if (task.decoder.kind == DecoderKind::scl_crc && !task.spec.crc)
        throw std::invalid_argument("sim: scl-crc decoder requires a CRC in the code spec");
    if (task.decoder.kind == DecoderKind::ml && task.a.ones() > 28)
        throw std::invalid_argument("sim: ml oracle supports at most 28 information bits");
    if (stop.min_block_errors < 1 || stop.max_frames < 1)
        throw std::invalid_argument("sim: stopping rule needs E >= 1 and F >= 1");
}

}  // namespace

SimPoint run_point(const SimTask& task, const StoppingRule& stop, std::uint64_t seed, int workers) {
    validate(task, stop);
    if (workers < 1) workers = 1;
    auto t0 = std::chrono::steady_clock::now();

    std::vector<std::unique_ptr<FrameWorker>> pool;
    for (int w = 0; w < workers; ++w) pool.push_back(std::make_unique<FrameWorker>(task, seed));

    Counters total;
    std::uint64_t done = 0;
    while (done < stop.max_frames && total.blk_errs < stop.min_block_errors) {
        std::uint64_t round = std::min<std::uint64_t>(kRoundFrames, stop.max_frames - done);
        std::vector<Counters> part(workers);
        if (workers == 1) {
            pool[0]->run_range(done, done + round, part[0]);
        } else {
            std::vector<std::thread> threads;
            std::uint64_t chunk = (round + workers - 1) / workers;
            for (int w = 0; w < workers; ++w) {
                std::uint64_t lo = done + std::min<std::uint64_t>(round, w * chunk);
                std::uint64_t hi = done + std::min<std::uint64_t>(round, (w + 1) * chunk);
                if (lo >= hi) break;
                threads.emplace_back([&, w, lo, hi] { pool[w]->run_range(lo, hi, part[w]); });
            }
            for (auto& t : threads) t.join();
        }
        for (const auto& p : part) total += p;
        done += round;
    }

    SimPoint pt;
    pt.channel_param = task.channel.kind == ChannelKind::bec ? task.channel.epsilon
                                                             : task.channel.ebn0_db;
    pt.frames = total.frames;
    pt.bit_errs = total.bit_errs;
    pt.bit_errs_sq = total.bit_errs_sq;
    pt.blk_errs = total.blk_errs;
    pt.ber = static_cast<double>(total.bit_errs) /
             (static_cast<double>(total.frames) * task.spec.payload_bits);
    pt.bler = static_cast<double>(total.blk_errs) / static_cast<double>(total.frames);
    pt.avg_iters = task.decoder.kind == DecoderKind::bp
                       ? static_cast<double>(total.iter_sum) / static_cast<double>(total.frames)
                       : 0.0;
    pt.seed = seed;
    pt.decoder_desc = task.decoder.describe();
    pt.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return pt;
}

std::vector<SimPoint> run_sweep(const SimTask& base, const SweepGrid& grid,
                                const StoppingRule& stop, std::uint64_t seed, int workers) {
    int axes = (!grid.snr_db.empty()) + (!grid.epsilon.empty()) + (!grid.bp_iters.empty()) +
               (!grid.list_sizes.empty());
    if (axes != 1)
        throw std::invalid_argument("run_sweep: exactly one grid axis must be non-empty");

    std::vector<SimPoint> out;
    SimTask task = base;
    for (double snr : grid.snr_db) {
        task.channel.ebn0_db = snr;
        out.push_back(run_point(task, stop, seed, workers));
    }
    for (double eps : grid.epsilon) {
        task.channel.epsilon = eps;
        out.push_back(run_point(task, stop, seed, workers));
    }
    for (int it : grid.bp_iters) {
        task.decoder.bp_max_iters = it;
        out.push_back(run_point(task, stop, seed, workers));
    }
    for (int L : grid.list_sizes) {
        task.decoder.list_size = L;
        out.push_back(run_point(task, stop, seed, workers));
    }
    return out;
}

void write_sim_csv(std::ostream& os, const std::vector<SimPoint>& points) {
    os << "snr_db,frames,bit_errs,blk_errs,ber,bler,avg_iters,seed\n";
    std::ostringstream line;
    line.precision(17);
    for (const auto& p : points) {
        line.str("");
        line << p.channel_param << ',' << p.frames << ',' << p.bit_errs << ',' << p.blk_errs << ','
             << p.ber << ',' << p.bler << ',' << p.avg_iters << ',' << p.seed << '\n';
        os << line.str();
    }
}

}  // namespace polarforge
