#pragma once

#include <cstdint>

namespace i3kit {

/// splitmix64: small, fast, and identical on every platform. Used wherever
/// reproducible byte-identical output matters (layout jitter, synthetic
/// fixtures); std::uniform_* distributions are implementation-defined and
/// would break cross-run determinism guarantees.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound); bound > 0.
  uint64_t next_below(uint64_t bound) { return next() % bound; }
};

}  // namespace i3kit
