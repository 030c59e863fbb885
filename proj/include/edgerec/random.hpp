#pragma once

#include <cstdint>
#include <random>

namespace edgerec {

/// Seeded generator with a pinned, portable output sequence.
///
/// The engine is std::mt19937_64 (whose output is fixed by the standard; the
/// 10000th draw from the default seed is 9981545732273789042). The standard
/// distribution classes are implementation-defined, so every derived draw is
/// computed here from raw 64-bit words.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound) by rejection; bound must be > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    bool bernoulli(double p) { return uniform() < p; }

  private:
    std::mt19937_64 engine_;
};

} // namespace edgerec
