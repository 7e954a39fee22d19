#pragma once

#include <string>
#include <vector>

#include "polarforge/bitword.hpp"
#include "polarforge/rng.hpp"

namespace polarforge {

// LLR saturation / erasure sentinel: larger than any achievable AWGN LLR
// at simulated SNRs, but keeps decoder arithmetic finite.
inline constexpr double kLlrSaturation = 1e6;

enum class ChannelKind { awgn, rayleigh, bec };

std::string to_string(ChannelKind k);

// Per-received-word LLRs, positive favors bit 0. BEC frames hold only
// {+M, -M, 0}. Rayleigh frames keep their fading coefficients.
struct LlrFrame {
    std::vector<double> llr;
    ChannelKind kind = ChannelKind::awgn;
    double sigma2 = 0.0;          // noise variance (awgn/rayleigh); epsilon for bec
    std::vector<double> fading;   // alpha_i, rayleigh only
};

struct ChannelConfig {
    ChannelKind kind = ChannelKind::awgn;
    double ebn0_db = 0.0;
    double rate = 0.5;    // Rc used in the Eb/N0 accounting (payload rate)
    double epsilon = 0.0; // bec only
};

// sigma^2 = 1 / (2 Rc 10^(EbN0/10)) for unit-energy BPSK
double awgn_sigma2(double ebn0_db, double rc);

// BPSK maps b -> 1-2b; per bit: y = s + n, llr = 2y/sigma^2
LlrFrame awgn_llr(const BitWord& x, double ebn0_db, double rc, RngStream& rng);

// y = alpha*s + n with E[alpha^2] = 1, perfect CSI: llr = (2/sigma^2)*alpha*y.
// Draw order per bit: alpha, then noise. fading_override is a test hook.
LlrFrame rayleigh_llr(const BitWord& x, double ebn0_db, double rc, RngStream& rng,
                      const std::vector<double>* fading_override = nullptr);

// each bit independently erased (llr 0) with probability epsilon, else +-M
LlrFrame bec_llr(const BitWord& x, double epsilon, RngStream& rng);

// buffer-reusing dispatch for the Monte-Carlo hot path
void make_llr(const ChannelConfig& cfg, const BitWord& x, RngStream& rng, LlrFrame& out);

}  // namespace polarforge
