#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace polarforge {

enum class BitRole { message, u_domain, codeword };

// Binary vector packed into 64-bit words (LSB-first inside a word).
// Bits past size() in the last word are kept zero.
class BitWord {
public:
    BitWord() = default;
    BitWord(std::size_t n_bits, BitRole role)
        : words_((n_bits + 63) / 64, 0), n_bits_(n_bits), role_(role) {}

    static BitWord from_bits(const std::vector<int>& bits, BitRole role) {
        BitWord w(bits.size(), role);
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i]) w.set(i, true);
        return w;
    }

    std::size_t size() const { return n_bits_; }
    BitRole role() const { return role_; }
    void set_role(BitRole r) { role_ = r; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    void set(std::size_t i, bool v) {
        std::uint64_t m = std::uint64_t{1} << (i & 63);
        if (v)
            words_[i >> 6] |= m;
        else
            words_[i >> 6] &= ~m;
    }

    void clear() { std::fill(words_.begin(), words_.end(), 0); }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    void xor_with(const BitWord& other) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    }

    std::span<std::uint64_t> words() { return words_; }
    std::span<const std::uint64_t> words() const { return words_; }

    std::vector<int> to_bits() const {
        std::vector<int> out(n_bits_);
        for (std::size_t i = 0; i < n_bits_; ++i) out[i] = get(i) ? 1 : 0;
        return out;
    }

    // equality is on contents; the role tag is bookkeeping
    friend bool operator==(const BitWord& a, const BitWord& b) {
        return a.n_bits_ == b.n_bits_ && a.words_ == b.words_;
    }

private:
    std::vector<std::uint64_t> words_;
    std::size_t n_bits_ = 0;
    BitRole role_ = BitRole::message;
};

}  // namespace polarforge
