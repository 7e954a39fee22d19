#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polarforge/avector.hpp"
#include "polarforge/bitword.hpp"
#include "polarforge/channel.hpp"
#include "polarforge/code_spec.hpp"

namespace polarforge {

enum class DecoderKind { sc, scl, scl_crc, bp, ml };

std::string to_string(DecoderKind k);

struct DecoderConfig {
    DecoderKind kind = DecoderKind::sc;
    int list_size = 8;       // scl / scl_crc
    int bp_max_iters = 200;  // bp
    bool bp_min_sum = false; // scaled min-sum check nodes (factor 0.9375)

    std::string describe() const;
};

struct DecodeResult {
    BitWord u_hat;               // frozen positions are zero
    BitWord x_hat;               // always polar_transform(u_hat)
    BitWord message_hat;         // payload bits, CRC parity stripped
    double metric = 0.0;         // path metric (lower = better) or BP |LLR| sum
    int iterations_used = 0;     // bp only
    std::optional<bool> crc_pass;
};

// Successive cancellation: min-sum f, sign-conditioned g, zero-LLR
// decisions resolve to bit 0. Standalone recursive implementation.
class ScDecoder {
public:
    ScDecoder(const CodeSpec& spec, const AVector& a);
    DecodeResult decode(const LlrFrame& frame);
    // decision LLRs of the last call, natural u order
    const std::vector<double>& last_decision_llrs() const { return dec_llr_; }

private:
    void recurse(int level, std::size_t len, double* llr, std::uint8_t* bits_out);

    CodeSpec spec_;
    AVector a_;
    std::vector<std::vector<double>> lscratch_;
    std::vector<std::vector<std::uint8_t>> bscratch_;
    std::vector<double> dec_llr_;
    std::size_t next_bit_ = 0;
};

// List decoding with the additive |LLR| disagreement penalty. Paths
// duplicate at information bits and are pruned to the best L with a
// stable tie-break (lower path index survives).
class SclDecoder {
public:
    SclDecoder(const CodeSpec& spec, const AVector& a, int list_size);

    DecodeResult decode(const LlrFrame& frame);      // best metric path
    DecodeResult decode_crc(const LlrFrame& frame);  // best CRC-passing path

    struct ListEntry {
        BitWord u_hat;
        double metric;
    };
    // final list of the last call, sorted by metric (stable)
    const std::vector<ListEntry>& final_list() const { return final_list_; }

private:
    struct PathState {
        std::vector<double> llr;         // levels 0..n, flat
        std::vector<std::uint8_t> cbit;  // two parity planes per level, flat
        std::vector<std::uint8_t> u;
        double metric = 0.0;
    };

    void run(const LlrFrame& frame);
    void calc_llr(PathState& p, int level, std::size_t phase);
    void update_c(PathState& p, int level, std::size_t phase);

    CodeSpec spec_;
    AVector a_;
    int list_size_;
    int n_;
    std::size_t N_;
    std::vector<std::size_t> level_off_;  // offsets of level arrays
    std::vector<PathState> paths_, scratch_;
    std::size_t alive_ = 0;
    std::vector<ListEntry> final_list_;
};

// Flooding belief propagation on the n-stage encoding graph with the
// re-encoding early stop (terminate once x_hat == u_hat * G).
class BpDecoder {
public:
    BpDecoder(const CodeSpec& spec, const AVector& a, int max_iters, bool scaled_min_sum = false);
    DecodeResult decode(const LlrFrame& frame);
    // u-side marginals of the last call, natural u order
    const std::vector<double>& last_u_marginals() const { return u_marg_; }
    // hard decision on the x-side marginals at the stop iteration
    const BitWord& last_x_marginal_hard() const { return x_marg_hard_; }

private:
    CodeSpec spec_;
    AVector a_;
    int max_iters_;
    bool min_sum_;
    int n_;
    std::size_t N_;
    std::vector<double> left_, right_;  // (n+1) x N message planes
    std::vector<double> u_marg_;
    std::vector<std::uint32_t> rev_;
    BitWord x_marg_hard_;
};

// Exhaustive maximum-likelihood reference: enumerates all 2^k codewords
// and maximizes correlation with the frame. k <= 28 enforced.
class MlOracleDecoder {
public:
    MlOracleDecoder(const CodeSpec& spec, const AVector& a);
    DecodeResult decode(const LlrFrame& frame);

private:
    CodeSpec spec_;
    AVector a_;
    std::vector<std::vector<std::uint32_t>> row_bits_;  // set positions of G rows per info index
};

// spec-level convenience entry points
DecodeResult decode_sc(const LlrFrame& frame, const AVector& a);
DecodeResult decode_scl(const LlrFrame& frame, const AVector& a, int list_size);
DecodeResult decode_scl_crc(const LlrFrame& frame, const AVector& a, int list_size,
                            const CrcConfig& crc);
DecodeResult decode_bp(const LlrFrame& frame, const AVector& a, int n_it_max);
DecodeResult decode_ml_oracle(const LlrFrame& frame, const AVector& a);

}  // namespace polarforge
