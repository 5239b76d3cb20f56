#pragma once

#include <complex>
#include <cstdint>

namespace maccfd {

inline constexpr std::uint64_t kGolden64 = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 finalizer. Bijective on 64-bit integers.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of the independent sub-stream `tag` of `seed`.
///
/// Sub-streams with distinct tags never share state, so adding a consumer
/// with a new tag does not perturb draws made under existing tags.
constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t tag) {
  return mix64(seed + kGolden64 * (tag + 1));
}

/// Counter-based 64-bit generator (SplitMix64): the state walks a Weyl
/// sequence and each output is mix64 of it. Cheap to seed, reproducible
/// across platforms, and splittable via substream_seed().
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() { return mix64(state_ += kGolden64); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Pair of independent standard normals as (re, im), via the Box-Muller
  /// transform. Consumes exactly two uniforms; u1 is mapped to (0, 1] so
  /// the log never sees zero.
  std::complex<double> standard_normal_pair() {
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * 3.14159265358979323846 * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  std::uint64_t state_;
};

}  // namespace maccfd
