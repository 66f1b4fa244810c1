#pragma once

#include <cstdint>

namespace pdeiss {

/// 64-bit linear congruential generator (Knuth MMIX multiplier). All seeded
/// signal families draw from this generator so runs are reproducible across
/// platforms and languages; the recurrence is documented in the README.
class Lcg64 {
public:
    explicit Lcg64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_;
    }

    /// Uniform in [0,1) from the top 53 bits.
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [-1,1).
    double next_symmetric() { return 2.0 * next_uniform() - 1.0; }

private:
    std::uint64_t state_;
};

}  // namespace pdeiss
