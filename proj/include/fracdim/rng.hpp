#pragma once

#include <cstdint>

namespace fracdim {

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based generator: the value at a counter depends only on
// (seed, stream, counter), so parallel and serial evaluation orders give
// identical draws.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix64(mix64(seed) + 0x6a09e667f3bcc909ULL * stream)) {}

    std::uint64_t bits(std::uint64_t counter) const {
        return mix64(mix64(key_ ^ counter));
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t key_;
};

}  // namespace fracdim
