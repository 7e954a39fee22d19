#include "polarforge/core.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace polarforge {

std::uint32_t bit_reverse(std::uint32_t i, int n) {
    std::uint32_t r = 0;
    for (int b = 0; b < n; ++b) {
        r = (r << 1) | (i & 1);
        i >>= 1;
    }
    return r;
}

void butterfly_xor(std::span<std::uint64_t> words, std::size_t n_bits) {
    for (std::size_t h = 1; h < n_bits; h <<= 1) {
        if (h < 64) {
            // pattern repeats inside each word; positions with (j & h) == 0
            // absorb the bit h places above
            std::uint64_t mask = ~std::uint64_t{0} / ((std::uint64_t{1} << h) + 1);
            for (auto& w : words) w ^= (w >> h) & mask;
        } else {
            std::size_t hw = h / 64;
            for (std::size_t base = 0; base + hw < words.size(); base += 2 * hw)
                for (std::size_t t = 0; t < hw; ++t) words[base + t] ^= words[base + hw + t];
        }
    }
}

BitWord polar_transform(const BitWord& u, int n) {
    std::size_t N = std::size_t{1} << n;
    if (u.size() != N)
        throw std::invalid_argument("polar_transform: input length is not 2^n");
    BitWord y = u;
    butterfly_xor(y.words(), N);
    BitWord x(N, BitRole::codeword);
    for (std::size_t j = 0; j < N; ++j)
        if (y.get(bit_reverse(static_cast<std::uint32_t>(j), n))) x.set(j, true);
    return x;
}

BitWord encode(const BitWord& message, const AVector& a, const CodeSpec& spec) {
    if (a.size() != spec.block_length)
        throw std::invalid_argument("encode: A-vector length does not match N");
    if (a.ones() != spec.non_frozen_count())
        throw std::invalid_argument("encode: A-vector ones() does not match k (+ CRC width)");
    BitWord payload = message;
    if (spec.crc) {
        if (message.size() != spec.payload_bits)
            throw std::invalid_argument("encode: message length does not match k");
        payload = crc_attach(message, *spec.crc);
    } else if (message.size() != spec.non_frozen_count()) {
        throw std::invalid_argument("encode: message length does not match k");
    }
    BitWord u(spec.block_length, BitRole::u_domain);
    std::size_t t = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.is_info(i)) {
            if (payload.get(t++)) u.set(i, true);
        }
    return polar_transform(u, spec.n);
}

BitWord extract_message(const BitWord& u_hat, const AVector& a, const CodeSpec& spec) {
    BitWord msg(spec.payload_bits, BitRole::message);
    std::size_t t = 0;
    for (std::size_t i = 0; i < a.size() && t < spec.payload_bits; ++i)
        if (a.is_info(i)) {
            if (u_hat.get(i)) msg.set(t, true);
            ++t;
        }
    return msg;
}

std::uint64_t crc_remainder(const BitWord& payload, const CrcConfig& crc) {
    std::uint64_t reg = crc.init;
    std::uint64_t top = std::uint64_t{1} << (crc.width - 1);
    std::uint64_t mask = (crc.width == 64) ? ~std::uint64_t{0}
                                           : (std::uint64_t{1} << crc.width) - 1;
    for (std::size_t i = 0; i < payload.size(); ++i) {
        bool fb = ((reg & top) != 0) ^ payload.get(i);
        reg = (reg << 1) & mask;
        if (fb) reg ^= crc.poly;
    }
    return reg;
}

BitWord crc_attach(const BitWord& payload, const CrcConfig& crc) {
    std::uint64_t rem = crc_remainder(payload, crc);
    BitWord out(payload.size() + crc.width, BitRole::message);
    for (std::size_t i = 0; i < payload.size(); ++i)
        if (payload.get(i)) out.set(i, true);
    for (int b = 0; b < crc.width; ++b)  // parity appended MSB-first
        if ((rem >> (crc.width - 1 - b)) & 1) out.set(payload.size() + b, true);
    return out;
}

bool crc_check(const BitWord& word, const CrcConfig& crc) {
    if (word.size() < static_cast<std::size_t>(crc.width)) return false;
    std::size_t k = word.size() - crc.width;
    BitWord payload(k, BitRole::message);
    for (std::size_t i = 0; i < k; ++i)
        if (word.get(i)) payload.set(i, true);
    std::uint64_t rem = crc_remainder(payload, crc);
    for (int b = 0; b < crc.width; ++b)
        if (static_cast<bool>((rem >> (crc.width - 1 - b)) & 1) != word.get(k + b)) return false;
    return true;
}

BitWord crc_attach(const BitWord& payload, const CodeSpec& spec) {
    if (!spec.crc) throw std::logic_error("crc_attach: no CRC configured for this code");
    return crc_attach(payload, *spec.crc);
}

bool crc_check(const BitWord& word, const CodeSpec& spec) {
    if (!spec.crc) throw std::logic_error("crc_check: no CRC configured for this code");
    return crc_check(word, *spec.crc);
}

std::uint32_t min_distance(const AVector& a) {
    if (a.ones() == 0)
        throw std::invalid_argument("min_distance: all positions frozen");
    int min_pop = 32;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.is_info(i)) min_pop = std::min(min_pop, std::popcount(static_cast<std::uint32_t>(i)));
    return std::uint32_t{1} << min_pop;
}

}  // namespace polarforge
