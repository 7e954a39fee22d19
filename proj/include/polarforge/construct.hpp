#pragma once

#include <vector>

#include "polarforge/avector.hpp"
#include "polarforge/code_spec.hpp"

namespace polarforge {

// Bhattacharyya parameters Z(W_i) of the N synthesized bit-channels,
// natural u-index order. Exact erasure probabilities for a BEC.
struct ReliabilityVector {
    std::vector<double> z;
};

// BEC recursion Z- = 2Z - Z^2, Z+ = Z^2
ReliabilityVector bhattacharyya_bec(int n, double epsilon);

// same recursion carried in log(Z); immune to underflow for large n
std::vector<double> bhattacharyya_bec_log(int n, double epsilon);

// AWGN design SNR to surrogate BEC erasure probability:
// eps = exp(-Rc * 10^(EbN0/10)); 3.6 dB at rate 1/2 lands on ~0.32
double design_snr_to_epsilon(double ebn0_db, double rc);

AVector construct_bhattacharyya(const CodeSpec& spec, double design_snr_db);
AVector construct_bhattacharyya_eps(const CodeSpec& spec, double epsilon);

// Reed-Muller rule: pick by descending G_N row weight; partial weight
// classes are resolved by smaller Z at eps = 0.5
AVector construct_rm(const CodeSpec& spec);

}  // namespace polarforge
