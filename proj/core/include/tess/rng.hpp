#pragma once

#include <cmath>
#include <cstdint>

namespace tess {

// xoshiro256++ seeded through SplitMix64.  Hand-rolled so that streams are
// byte-identical across platforms and standard library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& si : s_) {
      // SplitMix64 step.
      x += 0x9E3779B97F4A7C15ull;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
      si = z ^ (z >> 31);
    }
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return std::ldexp(static_cast<double>(next_u64() >> 11), -53); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Exponential with rate 1; uniform() < 1 so the log argument is positive.
  double exponential() { return -std::log(1.0 - uniform()); }

  // Poisson count via exponential interarrivals; adequate for the mean
  // magnitudes used here (thousands at most).
  std::uint64_t poisson(double mean) {
    std::uint64_t n = 0;
    double acc = exponential();
    while (acc < mean) {
      ++n;
      acc += exponential();
    }
    return n;
  }

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  std::uint64_t s_[4];
};

}  // namespace tess
