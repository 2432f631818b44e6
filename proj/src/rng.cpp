#include "rng.hpp"

#include <cmath>
#include <stdexcept>

namespace macbench::rng {

uint64_t splitmix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

uint64_t stream_seed(uint64_t seed, uint64_t stream_id) {
    return splitmix64(seed ^ (stream_id + 1) * 0x9E3779B97F4A7C15ull);
}

uint64_t derive_seed(uint64_t base_seed, uint64_t technique, uint64_t g_index,
                     uint64_t replication) {
    uint64_t s = splitmix64(base_seed ^ splitmix64(technique + 1));
    s = splitmix64(s ^ splitmix64((g_index + 1) * 0x9E3779B97F4A7C15ull));
    s = splitmix64(s ^ splitmix64((replication + 1) * 0xBF58476D1CE4E5B9ull));
    return s;
}

double RandomStream::exponential(double rate) {
    if (!(rate > 0.0)) throw std::domain_error("exponential rate must be positive");
    // Inverse CDF on 1 - U so the argument of log1p stays in (-1, 0].
    return -std::log1p(-next_double()) / rate;
}

uint32_t RandomStream::uniform_int(uint32_t lo, uint32_t hi) {
    if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
    const uint64_t span = static_cast<uint64_t>(hi) - lo + 1;
    // Multiply-shift rejection-free mapping is biased for spans that do not
    // divide 2^64; use simple rejection from the top to keep it exact.
    const uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    uint64_t u;
    do {
        u = next_u64();
    } while (u >= limit);
    return lo + static_cast<uint32_t>(u % span);
}

}  // namespace macbench::rng
