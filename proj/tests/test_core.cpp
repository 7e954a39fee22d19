#include <doctest.h>

#include <sstream>

#include "oracle_helpers.hpp"
#include "polarforge/core.hpp"
#include "polarforge/rng.hpp"

using namespace polarforge;

namespace {

BitWord word(const std::vector<int>& bits, BitRole role = BitRole::u_domain) {
    return BitWord::from_bits(bits, role);
}

AVector random_avector(std::size_t n, std::size_t k, RngStream& rng) {
    AVector a(n);
    std::size_t placed = 0;
    while (placed < k) {
        std::size_t i = rng.below(n);
        if (!a.is_info(i)) {
            a.set_info(i, true);
            ++placed;
        }
    }
    return a;
}

}  // namespace

TEST_CASE("polar transform matches the hand examples") {
    CHECK(polar_transform(word({0, 0, 0, 0, 0, 0, 0, 0}), 3) ==
          word({0, 0, 0, 0, 0, 0, 0, 0}, BitRole::codeword));
    CHECK(polar_transform(word({0, 1, 0, 0}), 2) == word({1, 0, 1, 0}, BitRole::codeword));
    CHECK(polar_transform(word({1, 0}), 1) == word({1, 0}, BitRole::codeword));
    CHECK_THROWS_AS(polar_transform(word({1, 0, 1}), 2), std::invalid_argument);
}

TEST_CASE("transform equals explicit B_N F^n matrix multiply up to N=64") {
    RngStream rng(11);
    for (int n = 0; n <= 6; ++n) {
        std::size_t N = std::size_t{1} << n;
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<int> u(N);
            for (auto& b : u) b = static_cast<int>(rng.below(2));
            auto expect = oracle::encode_matrix(u, n);
            CHECK(polar_transform(word(u), n) == word(expect, BitRole::codeword));
        }
    }
}

TEST_CASE("transform is GF(2) linear and the F part is self-inverse") {
    RngStream rng(12);
    std::size_t N = 64;
    for (int trial = 0; trial < 50; ++trial) {
        BitWord u(N, BitRole::u_domain), v(N, BitRole::u_domain);
        for (std::size_t i = 0; i < N; ++i) {
            u.set(i, rng.below(2));
            v.set(i, rng.below(2));
        }
        BitWord sum = u;
        sum.xor_with(v);
        BitWord lhs = polar_transform(sum, 6);
        BitWord rhs = polar_transform(u, 6);
        rhs.xor_with(polar_transform(v, 6));
        CHECK(lhs == rhs);

        BitWord twice = u;
        butterfly_xor(twice.words(), N);
        butterfly_xor(twice.words(), N);
        CHECK(twice == u);
    }
}

TEST_CASE("bit reversal is an involution") {
    for (int n = 1; n <= 11; ++n)
        for (std::uint32_t i = 0; i < (1u << n); i += 7)
            CHECK(bit_reverse(bit_reverse(i, n), n) == i);
}

TEST_CASE("encode places single message bits on G rows") {
    auto a = AVector::from_positions(8, {4, 6, 7, 8});
    auto spec = CodeSpec::make(8, 4);

    CHECK(encode(word({0, 0, 0, 0}, BitRole::message), a, spec) ==
          word({0, 0, 0, 0, 0, 0, 0, 0}, BitRole::codeword));
    // message [1,0,0,0] lands on u_4 (1-indexed), i.e. row 4 of G_8
    CHECK(encode(word({1, 0, 0, 0}, BitRole::message), a, spec) ==
          word({1, 0, 1, 0, 1, 0, 1, 0}, BitRole::codeword));
    CHECK_THROWS_AS(encode(word({1, 0, 0}, BitRole::message), a, spec), std::invalid_argument);
}

TEST_CASE("full rate encode is the bare transform") {
    RngStream rng(13);
    AVector a(16);
    for (std::size_t i = 0; i < 16; ++i) a.set_info(i, true);
    auto spec = CodeSpec::make(16, 16);
    for (int trial = 0; trial < 20; ++trial) {
        BitWord m(16, BitRole::message);
        for (std::size_t i = 0; i < 16; ++i) m.set(i, rng.below(2));
        CHECK(encode(m, a, spec) == polar_transform(m, 4));
    }
}

TEST_CASE("crc matches the reference check value and the division oracle") {
    // ASCII "123456789", CRC-16/CCITT-FALSE
    std::vector<int> bits;
    for (char c : std::string("123456789"))
        for (int b = 7; b >= 0; --b) bits.push_back((c >> b) & 1);
    auto cfg = CodeSpec::default_crc(16);
    CHECK(crc_remainder(word(bits, BitRole::message), cfg) == 0x29B1);
    CHECK(oracle::crc_division(bits, 16, cfg.poly, cfg.init) == 0x29B1);

    RngStream rng(14);
    for (int width : {16, 24}) {
        auto c = CodeSpec::default_crc(width);
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<int> payload(20 + trial);
            for (auto& b : payload) b = static_cast<int>(rng.below(2));
            auto w = word(payload, BitRole::message);
            CHECK(crc_remainder(w, c) == oracle::crc_division(payload, width, c.poly, c.init));
            CHECK(crc_check(crc_attach(w, c), c));
        }
    }
}

TEST_CASE("any single bit flip breaks the crc") {
    auto cfg = CodeSpec::default_crc(16);
    RngStream rng(15);
    std::vector<int> payload(24);
    for (auto& b : payload) b = static_cast<int>(rng.below(2));
    BitWord attached = crc_attach(word(payload, BitRole::message), cfg);
    for (std::size_t i = 0; i < attached.size(); ++i) {
        BitWord broken = attached;
        broken.set(i, !broken.get(i));
        CHECK_FALSE(crc_check(broken, cfg));
    }
}

TEST_CASE("crc requires configuration at the spec level") {
    auto spec = CodeSpec::make(8, 4);
    CHECK_THROWS_AS(crc_attach(word({1, 0, 1}, BitRole::message), spec), std::logic_error);
    CHECK_THROWS_AS(crc_check(word({1, 0, 1}, BitRole::message), spec), std::logic_error);
}

TEST_CASE("min distance from row weights") {
    CHECK(min_distance(AVector::from_positions(8, {4, 6, 7, 8})) == 4);
    CHECK(min_distance(AVector::from_positions(8, {8})) == 8);
    AVector full(8);
    for (std::size_t i = 0; i < 8; ++i) full.set_info(i, true);
    CHECK(min_distance(full) == 1);
    CHECK_THROWS_AS(min_distance(AVector(8)), std::invalid_argument);
}

TEST_CASE("min distance equals the exhaustive minimum codeword weight") {
    RngStream rng(16);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + static_cast<int>(rng.below(4));  // N in 4..32
        std::size_t N = std::size_t{1} << n;
        std::size_t k = 1 + rng.below(std::min<std::size_t>(N, 10));
        AVector a = random_avector(N, k, rng);
        CHECK(min_distance(a) ==
              static_cast<std::uint32_t>(oracle::min_weight_exhaustive(a, n)));
    }
}

TEST_CASE("avector v1 file format is bit-exact") {
    auto a = AVector::from_positions(8, {4, 6, 7, 8});
    std::ostringstream os;
    a.save(os);
    CHECK(os.str() == "polar-avector v1\nN=8 ones=4\n17\n");

    std::istringstream is(os.str());
    CHECK(AVector::load(is) == a);

    RngStream rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t N = std::size_t{1} << (1 + rng.below(7));
        AVector r = random_avector(N, 1 + rng.below(N), rng);
        std::ostringstream buf;
        r.save(buf);
        std::istringstream in(buf.str());
        AVector back = AVector::load(in);
        CHECK(back == r);
        std::ostringstream buf2;
        back.save(buf2);
        CHECK(buf.str() == buf2.str());
    }
}

TEST_CASE("avector loader rejects malformed files") {
    auto expect_throw = [](const std::string& text) {
        std::istringstream is(text);
        CHECK_THROWS_AS(AVector::load(is), std::runtime_error);
    };
    expect_throw("not-a-header\nN=8 ones=4\n17\n");
    expect_throw("polar-avector v1\nN=8 ones=4\n1\n");   // wrong digit count
    expect_throw("polar-avector v1\nN=8 ones=3\n17\n");  // ones mismatch
    expect_throw("polar-avector v1\nN=8 ones=4\nzz\n");  // non-hex
}

TEST_CASE("code spec validation") {
    CHECK_THROWS_WITH_AS(static_cast<void>(CodeSpec::make(6, 3)), "N must be a power of two",
                         std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(CodeSpec::make(8, 0)), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(CodeSpec::make(8, 9)), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(CodeSpec::make(16, 8, CodeSpec::default_crc(16))),
                    std::invalid_argument);  // k + r > N
    auto s = CodeSpec::make(32, 8, CodeSpec::default_crc(16));
    CHECK(s.non_frozen_count() == 24);
    CHECK(s.rate() == doctest::Approx(0.25));
}

TEST_CASE("encode with crc carries k+r ones and round-trips the payload") {
    auto spec = CodeSpec::make(32, 8, CodeSpec::default_crc(16));
    RngStream rng(18);
    AVector a = random_avector(32, spec.non_frozen_count(), rng);
    BitWord m(8, BitRole::message);
    for (std::size_t i = 0; i < 8; ++i) m.set(i, rng.below(2));
    BitWord x = encode(m, a, spec);
    // invert the transform (F part is self-inverse, then undo bit reversal)
    BitWord u(32, BitRole::u_domain);
    for (std::size_t j = 0; j < 32; ++j)
        if (x.get(j)) u.set(bit_reverse(static_cast<std::uint32_t>(j), 5), true);
    butterfly_xor(u.words(), 32);
    CHECK(extract_message(u, a, spec) == m);
}
