#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "polarforge/bitword.hpp"

namespace polarforge {

// Frozen/non-frozen mask of length N: a_i = 1 means position i carries
// data, a_i = 0 means it is frozen to zero. Indices are 0-based in code,
// 1-based in file headers and logs.
class AVector {
public:
    AVector() = default;
    explicit AVector(std::size_t n) : bits_(n, BitRole::u_domain) {}

    static AVector from_bits(const std::vector<int>& bits) {
        AVector a(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i]) a.set_info(i, true);
        return a;
    }

    // 1-based position list, e.g. {4,6,7,8} for [0 0 0 1 0 1 1 1]
    static AVector from_positions(std::size_t n, const std::vector<std::uint32_t>& ones_1based) {
        AVector a(n);
        for (auto p : ones_1based) a.set_info(p - 1, true);
        return a;
    }

    std::size_t size() const { return bits_.size(); }
    std::size_t ones() const { return bits_.popcount(); }
    bool is_info(std::size_t i) const { return bits_.get(i); }
    bool is_frozen(std::size_t i) const { return !bits_.get(i); }
    void set_info(std::size_t i, bool v) { bits_.set(i, v); }

    std::vector<std::uint32_t> info_positions() const {
        std::vector<std::uint32_t> out;
        out.reserve(ones());
        for (std::size_t i = 0; i < size(); ++i)
            if (is_info(i)) out.push_back(static_cast<std::uint32_t>(i));
        return out;
    }

    friend bool operator==(const AVector& a, const AVector& b) { return a.bits_ == b.bits_; }

    // text format v1:
    //   polar-avector v1
    //   N=<int> ones=<int>
    //   <hex, ceil(N/4) nibbles, MSB of first nibble = position 1>
    std::string to_hex() const;
    void save(std::ostream& os) const;
    void save_file(const std::string& path) const;
    static AVector load(std::istream& is);
    static AVector load_file(const std::string& path);

private:
    BitWord bits_;
};

}  // namespace polarforge
