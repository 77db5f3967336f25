#pragma once

#include <cstdint>

namespace jsccplan {

/// splitmix64 finalizer; also the building block of the counter-based streams.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Sequential splitmix64 stream. Deterministic across platforms; used for
/// scenario generation and oracle multi-start jitter.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    /// Uniform double in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    /// Uniform integer in [lo, hi] inclusive.
    int next_int(int lo, int hi) {
        const int span = hi - lo + 1;
        int v = lo + static_cast<int>(next_unit() * span);
        return v > hi ? hi : v;
    }

  private:
    std::uint64_t state_;
};

/// Stateless counter-based draw: one uniform in [0, 1) per (seed, slot,
/// subcarrier) triple. Order- and partition-independent by construction.
inline double counter_unit(std::uint64_t seed, std::uint64_t slot, std::uint64_t subcarrier) {
    const std::uint64_t h =
        mix64(mix64(seed + 0x9E3779B97F4A7C15ULL * slot) ^
              (0xD1B54A32D192ED03ULL * (subcarrier + 1)));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

/// Derives an independent child seed (per device, per trial, ...).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed ^ (0xA0761D6478BD642FULL * (index + 1)));
}

}  // namespace jsccplan
