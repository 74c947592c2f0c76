#pragma once

#include <cstdint>
#include <random>

namespace blindgrover {

// Seedable deterministic generator. Every stochastic operation in the
// library takes one of these explicitly, so a run is fully reproducible
// from a single seed. The derived draws below avoid std::*_distribution
// on purpose: their output is implementation-defined, and records-mode
// output has to be byte-identical across toolchains.
class Prng {
  public:
    explicit Prng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [0, bound). Modulo bias is ~bound/2^64, far below
    // anything the statistical tests can resolve.
    std::uint64_t next_below(std::uint64_t bound) { return engine_() % bound; }

    int bit() { return static_cast<int>(engine_() >> 63); }

    // Uniform double in [0, 1) with 53 random bits.
    double real01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  private:
    std::mt19937_64 engine_;
};

} // namespace blindgrover
