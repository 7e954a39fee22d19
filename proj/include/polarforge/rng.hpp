#pragma once

#include <cmath>
#include <cstdint>

namespace polarforge {

// Counter-based random stream: every (key, counter) pair maps to an
// independent sequence, so frame index f can be turned into its own
// stream and results never depend on worker scheduling.
class RngStream {
public:
    explicit RngStream(std::uint64_t key) : RngStream(key, 0) {}

    RngStream(std::uint64_t key, std::uint64_t counter)
        : state_(mix(mix(key) ^ (counter + 0x9E3779B97F4A7C15ULL))) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // standard normal via Box-Muller; the sine partner is cached
    double gauss() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double t = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(t);
        have_cached_ = true;
        return r * std::cos(t);
    }

    // Rayleigh with E[alpha^2] = 1
    double rayleigh_unit() { return std::sqrt(-std::log(1.0 - uniform())); }

    // uniform integer in [0, bound)
    std::uint64_t below(std::uint64_t bound) { return next_u64() % bound; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace polarforge
