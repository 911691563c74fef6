#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace noma {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer. Used for state expansion and substream derivation.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Deterministic seed for substream `index` of a stream seeded with `seed`.
// Also used to derive per-realization and per-sweep-point seeds so that
// parallel schedules cannot change results.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed + kGoldenGamma) + (index + 1) * kGoldenGamma);
}

// xoshiro256++ with splitmix64 state expansion. All variate transforms are
// implemented explicitly (no std:: distributions) so that a (seed, draw
// order) pair yields bit-identical values on any platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) {
      sm += kGoldenGamma;
      word = mix64(sm);
    }
  }

  std::uint64_t seed() const noexcept { return seed_; }

  // Independent stream derived from the original seed; splitting is stable
  // under any partitioning of work across substream indices.
  Rng substream(std::uint64_t index) const { return Rng(derive_stream_seed(seed_, index)); }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Unit-mean exponential; log1p keeps the argument away from log(0).
  double exponential() { return -std::log1p(-uniform01()); }

  // Circularly symmetric complex Gaussian with E[|a|^2] = 1, sampled as an
  // exponential power and a uniform phase. Draw order: power, then phase.
  std::complex<double> complex_gaussian() {
    const double power = exponential();
    const double phase = 2.0 * std::numbers::pi * uniform01();
    const double r = std::sqrt(power);
    return {r * std::cos(phase), r * std::sin(phase)};
  }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t seed_;
  std::array<std::uint64_t, 4> state_;
};

}  // namespace noma
