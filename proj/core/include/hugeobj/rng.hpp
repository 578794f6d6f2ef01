#pragma once

#include <cstdint>

namespace hugeobj {

// Splittable pseudo-random generator (splitmix64 with per-stream gamma).
// split() yields a statistically disjoint child stream; passing Rng by
// value therefore forks it, passing by reference advances the caller's
// stream. Learners take Rng& and spawn children for parallelizable work.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t gamma = kGoldenGamma)
      : state_(seed), gamma_(gamma | 1ULL) {}

  std::uint64_t next_u64() {
    state_ += gamma_;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on the 53-bit grid in [0,1).
  double next_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), n >= 1. Rejection-free bias is negligible
  // for n << 2^64; we use Lemire's multiply-shift with rejection.
  std::uint64_t next_below(std::uint64_t n) {
    if (n <= 1) return 0;
    while (true) {
      std::uint64_t x = next_u64();
      __uint128_t m = static_cast<__uint128_t>(x) * n;
      std::uint64_t lo = static_cast<std::uint64_t>(m);
      if (lo >= n || lo >= (0ULL - n) % n) return static_cast<std::uint64_t>(m >> 64);
    }
  }

  bool next_bernoulli(double p) { return next_real() < p; }

  // Child generator on a disjoint stream.
  Rng split() {
    std::uint64_t s = next_u64();
    std::uint64_t g = mix_gamma(next_u64());
    return Rng(s, g);
  }

 private:
  static constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

  static std::uint64_t mix_gamma(std::uint64_t z) {
    z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
    z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
    z = (z ^ (z >> 33)) | 1ULL;
    return z;
  }

  std::uint64_t state_;
  std::uint64_t gamma_;
};

}  // namespace hugeobj
