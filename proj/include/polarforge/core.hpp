#pragma once

#include <cstdint>
#include <span>

#include "polarforge/avector.hpp"
#include "polarforge/bitword.hpp"
#include "polarforge/code_spec.hpp"

namespace polarforge {

std::uint32_t bit_reverse(std::uint32_t i, int n);

// x = u * G_N over GF(2), G_N = B_N * F^{(x)n}. Butterfly plus
// bit-reversal gather, O(N log N) bit operations on packed words.
BitWord polar_transform(const BitWord& u, int n);

// the F^{(x)n} part alone, in place on packed words (self-inverse)
void butterfly_xor(std::span<std::uint64_t> words, std::size_t n_bits);

// Scatters the payload (CRC-extended first when configured) into the
// non-frozen positions in ascending index order and transforms.
BitWord encode(const BitWord& message, const AVector& a, const CodeSpec& spec);

// payload bits back out of a u-domain word; CRC parity is stripped
BitWord extract_message(const BitWord& u_hat, const AVector& a, const CodeSpec& spec);

// CRC over a bit sequence, MSB-first long division
std::uint64_t crc_remainder(const BitWord& payload, const CrcConfig& crc);
BitWord crc_attach(const BitWord& payload, const CrcConfig& crc);
bool crc_check(const BitWord& word, const CrcConfig& crc);
// CodeSpec-level wrappers; throw std::logic_error when no CRC is configured
BitWord crc_attach(const BitWord& payload, const CodeSpec& spec);
bool crc_check(const BitWord& word, const CodeSpec& spec);

// d_min = min row weight of G_N over the non-frozen rows,
// i.e. min over ones of 2^popcount(i); no codeword enumeration
std::uint32_t min_distance(const AVector& a);

}  // namespace polarforge
