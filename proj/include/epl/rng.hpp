#pragma once

#include <cstdint>

namespace epl {

// Counter-based pseudo-random stream keyed by (master_seed, replicate_id).
// Output i of a stream is a fixed mixing function of (key, i), so replicate
// streams are independent of thread scheduling and of each other: replaying
// a replicate always yields the same draws.
//
// The mixer is SplitMix64 (Steele/Lea/Flood), which is statistically solid
// for Monte Carlo work at these sizes.
class RngStream {
  public:
    RngStream(std::uint64_t master_seed, std::uint64_t replicate_id)
        : state_(mix(master_seed ^ mix(replicate_id * 0x9E3779B97F4A7C15ULL + 0x2545F4914F6CDD1DULL))) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // Uniform on [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Fair bit (top bit of the mixed word).
    int bit() { return static_cast<int>(next_u64() >> 63); }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace epl
