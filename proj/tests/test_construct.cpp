#include <doctest.h>

#include <cmath>

#include "polarforge/construct.hpp"

using namespace polarforge;

TEST_CASE("bec recursion on the worked examples") {
    CHECK(bhattacharyya_bec(0, 0.5).z == std::vector<double>{0.5});

    auto z1 = bhattacharyya_bec(1, 0.5).z;
    CHECK(z1[0] == doctest::Approx(0.75));
    CHECK(z1[1] == doctest::Approx(0.25));

    auto z3 = bhattacharyya_bec(3, 0.5).z;
    const double expect[] = {0.99609, 0.87891, 0.80859, 0.31641,
                             0.68359, 0.19141, 0.12109, 0.00391};
    for (int i = 0; i < 8; ++i) CHECK(std::fabs(z3[i] - expect[i]) <= 1e-5);
}

TEST_CASE("bec recursion boundary and errors") {
    CHECK_THROWS_AS(bhattacharyya_bec(3, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(bhattacharyya_bec(3, 1.1), std::invalid_argument);
    auto z = bhattacharyya_bec(4, 0.0).z;
    for (double v : z) CHECK(v == 0.0);
}

TEST_CASE("erasure conservation and degradation ordering") {
    for (int n = 1; n <= 12; ++n) {
        for (double eps : {0.2, 0.5, 0.32}) {
            auto z = bhattacharyya_bec(n, eps).z;
            double mean = 0;
            for (double v : z) mean += v;
            mean /= static_cast<double>(z.size());
            CHECK(std::fabs(mean - eps) < 1e-12);

            // Z+ <= Z <= Z- pairwise against the previous level
            auto prev = bhattacharyya_bec(n - 1, eps).z;
            for (std::size_t i = 0; i < prev.size(); ++i) {
                CHECK(z[2 * i] >= prev[i]);      // degraded
                CHECK(z[2 * i + 1] <= prev[i]);  // upgraded
                CHECK(z[2 * i] >= 0.0);
                CHECK(z[2 * i] <= 1.0);
            }
        }
    }
}

TEST_CASE("log domain recursion agrees with the linear one") {
    for (int n : {1, 4, 9}) {
        auto lin = bhattacharyya_bec(n, 0.37).z;
        auto lg = bhattacharyya_bec_log(n, 0.37);
        for (std::size_t i = 0; i < lin.size(); ++i)
            CHECK(std::exp(lg[i]) == doctest::Approx(lin[i]).epsilon(1e-9));
    }
}

TEST_CASE("design snr mapping") {
    CHECK(design_snr_to_epsilon(3.6, 0.5) > 0.316);
    CHECK(design_snr_to_epsilon(3.6, 0.5) < 0.320);
    CHECK(design_snr_to_epsilon(0.0, 0.5) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    CHECK(design_snr_to_epsilon(0.0, 1e-12) == doctest::Approx(1.0));
    // monotone decreasing in SNR
    CHECK(design_snr_to_epsilon(2.0, 0.5) > design_snr_to_epsilon(3.0, 0.5));
}

TEST_CASE("bhattacharyya construction selects the reliable channels") {
    CHECK(construct_bhattacharyya_eps(CodeSpec::make(8, 4), 0.5) ==
          AVector::from_positions(8, {4, 6, 7, 8}));
    CHECK(construct_bhattacharyya_eps(CodeSpec::make(4, 1), 0.5) ==
          AVector::from_positions(4, {4}));

    auto full = construct_bhattacharyya_eps(CodeSpec::make(8, 8), 0.5);
    CHECK(full.ones() == 8);

    // deterministic and popcount-exact
    auto spec = CodeSpec::make(64, 20);
    auto a1 = construct_bhattacharyya(spec, 2.0);
    auto a2 = construct_bhattacharyya(spec, 2.0);
    CHECK(a1 == a2);
    CHECK(a1.ones() == 20);
}

TEST_CASE("rm construction picks maximum row weights") {
    CHECK(construct_rm(CodeSpec::make(8, 4)) == AVector::from_positions(8, {4, 6, 7, 8}));
    CHECK(construct_rm(CodeSpec::make(8, 1)) == AVector::from_positions(8, {8}));
    auto full = construct_rm(CodeSpec::make(8, 8));
    CHECK(full.ones() == 8);
    // agreement with the eps=0.5 Bhattacharyya pick on P(8,4)
    CHECK(construct_rm(CodeSpec::make(8, 4)) ==
          construct_bhattacharyya_eps(CodeSpec::make(8, 4), 0.5));
}

TEST_CASE("rm tie-break prefers the more reliable channel inside a weight class") {
    // P(8,2): one weight-8 row, then one of three weight-4 rows; the
    // eps=0.5 ranking puts index 7 (0-based) first, then 6
    auto a = construct_rm(CodeSpec::make(8, 2));
    CHECK(a == AVector::from_positions(8, {7, 8}));
}
