#pragma once

#include <cstdint>
#include <random>

namespace psdisc {

// 64-bit seed mixing (splitmix64 finalizer). Child streams for parallel or
// per-trial loops are derived as child_seed(master, index); the mix keeps
// adjacent indices statistically independent and the derivation reproducible.
inline uint64_t mix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline uint64_t child_seed(uint64_t seed, uint64_t index) {
    return mix64(seed ^ mix64(index + 0x9E3779B97F4A7C15ull));
}

// Thin deterministic wrapper over std::mt19937_64. Distributions are done by
// hand (the raw engine sequence is pinned by the standard, the std::*
// distributions are not), so identical seeds give identical streams on every
// implementation.
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    // Uniform in [0,1), 53-bit resolution.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform in (0,1].
    double uniform_open01() { return 1.0 - uniform01(); }

    // Uniform integer in [0, n).
    uint64_t below(uint64_t n) { return gen_() % n; }

    // Standard normal via Box-Muller (no caching; two uniforms per draw).
    double normal() {
        const double u1 = uniform_open01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace psdisc
