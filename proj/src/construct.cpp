#include "polarforge/construct.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace polarforge {

ReliabilityVector bhattacharyya_bec(int n, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("bhattacharyya_bec: epsilon must be in [0, 1]");
    std::vector<double> z{epsilon};
    for (int level = 0; level < n; ++level) {
        std::vector<double> next(z.size() * 2);
        for (std::size_t i = 0; i < z.size(); ++i) {
            next[2 * i] = 2.0 * z[i] - z[i] * z[i];
            next[2 * i + 1] = z[i] * z[i];
        }
        z.swap(next);
    }
    return ReliabilityVector{std::move(z)};
}

std::vector<double> bhattacharyya_bec_log(int n, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("bhattacharyya_bec_log: epsilon must be in [0, 1]");
    std::vector<double> lz{std::log(epsilon)};
    for (int level = 0; level < n; ++level) {
        std::vector<double> next(lz.size() * 2);
        for (std::size_t i = 0; i < lz.size(); ++i) {
            // log(2z - z^2) = log z + log(2 - z)
            double l = lz[i];
            next[2 * i] = l + std::log(2.0 - std::exp(l));
            next[2 * i + 1] = 2.0 * l;
        }
        lz.swap(next);
    }
    return lz;
}

double design_snr_to_epsilon(double ebn0_db, double rc) {
    return std::exp(-rc * std::pow(10.0, ebn0_db / 10.0));
}

namespace {

// freeze the worst N-K channels; equal reliabilities freeze the lower index
AVector select_most_reliable(const std::vector<double>& badness, std::size_t keep) {
    std::size_t N = badness.size();
    std::vector<std::uint32_t> order(N);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (badness[a] != badness[b]) return badness[a] > badness[b];
        return a < b;
    });
    AVector out(N);
    for (std::size_t t = N - keep; t < N; ++t) out.set_info(order[t], true);
    return out;
}

}  // namespace

AVector construct_bhattacharyya_eps(const CodeSpec& spec, double epsilon) {
    if (spec.n > 20) {
        auto lz = bhattacharyya_bec_log(spec.n, epsilon);
        return select_most_reliable(lz, spec.non_frozen_count());
    }
    auto rv = bhattacharyya_bec(spec.n, epsilon);
    return select_most_reliable(rv.z, spec.non_frozen_count());
}

AVector construct_bhattacharyya(const CodeSpec& spec, double design_snr_db) {
    return construct_bhattacharyya_eps(spec, design_snr_to_epsilon(design_snr_db, spec.rate()));
}

AVector construct_rm(const CodeSpec& spec) {
    std::size_t N = spec.block_length;
    auto lz = bhattacharyya_bec_log(spec.n, 0.5);  // tie-break key, order-preserving
    std::vector<std::uint32_t> order(N);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        int wa = std::popcount(a), wb = std::popcount(b);
        if (wa != wb) return wa > wb;
        if (lz[a] != lz[b]) return lz[a] < lz[b];
        return a < b;
    });
    AVector out(N);
    for (std::size_t t = 0; t < spec.non_frozen_count(); ++t) out.set_info(order[t], true);
    return out;
}

}  // namespace polarforge
