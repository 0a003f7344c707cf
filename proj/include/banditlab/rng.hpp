#pragma once

#include <cstdint>

#include "banditlab/special_math.hpp"

namespace banditlab {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Counter-based generator (SplitMix64): the output is a hash of an advancing
// counter, so streams derived from distinct seeds are independent and replay
// identically on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in the open interval (0, 1); safe to feed to quantile functions.
  double next_open01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Unbiased integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r < limit) return r % n;
    }
  }

  // Gaussian draw by inverse-CDF transform; consumes exactly one uniform.
  double next_gaussian(double mu, double sigma) {
    return mu + sigma * normal_quantile(next_open01());
  }

  // Derives an independent stream seed from a master seed and a stream index.
  static std::uint64_t derive_stream(std::uint64_t master, std::uint64_t stream) {
    return mix64(master ^ mix64(stream * kGoldenGamma + kGoldenGamma));
  }

 private:
  std::uint64_t state_;
};

}  // namespace banditlab
