#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace hopfsec {

/// Explicit source of randomness. Every random draw in the library takes one
/// of these by reference; nothing reads ambient entropy.
class SeedStream {
 public:
  explicit SeedStream(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  /// Independent child stream for worker or purpose `index`.
  SeedStream split(std::uint64_t index) const {
    return SeedStream(mix(seed_ ^ mix(index + 0x632be59bd9b4e019ULL)));
  }

  std::uint64_t seed() const noexcept { return seed_; }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  double gaussian() { return normal_(engine_); }

  /// Standard complex Gaussian: real and imaginary parts i.i.d. N(0, 1/2).
  std::complex<double> complex_gaussian() {
    constexpr double kScale = 0.70710678118654752440;
    const double re = gaussian();
    const double im = gaussian();
    return {kScale * re, kScale * im};
  }

 private:
  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace hopfsec
