#pragma once

#include <cstdint>

namespace fgc {

/// Deterministic counter-based generator. The i-th output (1-based) is
/// splitmix64(seed + i*0x9e3779b97f4a7c15), using the standard splitmix64
/// finalizer. Any implementation that reproduces this formula reproduces
/// the exact sample sequence for a given seed.
struct CounterRng {
  std::uint64_t seed = 0;
  std::uint64_t counter = 0;

  explicit CounterRng(std::uint64_t s = 0) : seed(s) {}

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t at(std::uint64_t i) const {
    return mix(seed + (i + 1) * 0x9e3779b97f4a7c15ULL);
  }

  std::uint64_t next() { return at(counter++); }

  /// Uniform in [0, n). Modulo bias is acceptable here; reproducibility is
  /// the requirement, not equidistribution.
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

  /// Uniform in [lo, hi], inclusive.
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return (next() & 1) != 0; }
};

}  // namespace fgc
