#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace prone {

/// Seeded counter-based 64-bit generator.
///
/// Output number c is the SplitMix64 finalizer applied to key + c * gamma, so
/// the stream is a pure function of (seed, counter). Every randomized routine
/// in the library takes an Rng& owned by the caller; there is no global state.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : key_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    ++counter_;
    return mix(key_ + counter_ * kGamma);
  }

  /// Uniform real in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n);

  double normal() { return normal_(*this); }

  std::uint64_t counter() const { return counter_; }

  /// Independent generator for a derived stream (e.g. one per benchmark cell).
  Rng fork(std::uint64_t stream) const { return Rng(mix(key_ ^ mix(stream + kGamma))); }

  static constexpr std::uint64_t mix(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace prone
