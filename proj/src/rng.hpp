#pragma once

#include <cstdint>
#include <random>

namespace macbench::rng {

/// SplitMix64 mixing step. Used for turning (seed, stream) pairs and sweep
/// cell coordinates into well-separated 64-bit seeds.
uint64_t splitmix64(uint64_t z);

/// Seed for stream `stream_id` of a simulation seeded with `seed`.
uint64_t stream_seed(uint64_t seed, uint64_t stream_id);

/// Per-replication seed for a sweep cell (technique, g-index, replication).
uint64_t derive_seed(uint64_t base_seed, uint64_t technique, uint64_t g_index,
                     uint64_t replication);

/// Deterministic random stream: a mt19937_64 engine (bit-exact across
/// platforms per the language standard) with explicit variate transforms,
/// since the standard library distributions are not portable bit-for-bit.
class RandomStream {
public:
    RandomStream(uint64_t seed, uint64_t stream_id)
        : engine_(stream_seed(seed, stream_id)) {}

    uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Exponential variate with the given rate (mean 1/rate), rate > 0.
    double exponential(double rate);

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Uniform in the half-open interval (0, width].
    double uniform_pos(double width) { return width * (1.0 - next_double()); }

    /// Uniform integer in [lo, hi], inclusive.
    uint32_t uniform_int(uint32_t lo, uint32_t hi);

private:
    std::mt19937_64 engine_;
};

}  // namespace macbench::rng
