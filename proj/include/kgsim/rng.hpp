#pragma once

#include <array>
#include <cstdint>

namespace kgsim {

// Deterministic generator used for every random decision in a run.
//
// The algorithm is xoshiro256++ 1.0 (Blackman & Vigna, public domain),
// seeded from a single 64-bit value through splitmix64. It is pinned here,
// rather than using <random> engines plus distributions, because the
// standard distributions are not bit-stable across library versions and
// seeded runs must replay byte-identically forever.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    // splitmix64 expansion of the seed into the 256-bit state.
    std::uint64_t x = seed;
    for (auto& word : state_) {
      x += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      word = z ^ (z >> 31);
    }
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    ++draws_;
    return result;
  }

  // Unbiased integer in [0, n), n >= 1, via bitmask rejection. For n a
  // power of two this consumes exactly one raw draw.
  std::uint64_t uniform_below(std::uint64_t n) {
    const std::uint64_t mask = mask_for(n - 1);
    std::uint64_t r;
    do {
      r = next_u64() & mask;
    } while (r >= n);
    return r;
  }

  // Uniform double in [0, 1) with 53 bits of precision.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // True with probability p; p <= 0 never fires, p >= 1 always fires.
  bool bernoulli(double p) { return next_double() < p; }

  // Raw 64-bit draws consumed so far. Tests use this to pin down which
  // stage steps consume randomness.
  std::uint64_t draws() const { return draws_; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  static std::uint64_t mask_for(std::uint64_t v) {
    std::uint64_t m = v;
    m |= m >> 1;
    m |= m >> 2;
    m |= m >> 4;
    m |= m >> 8;
    m |= m >> 16;
    m |= m >> 32;
    return m;
  }

  std::array<std::uint64_t, 4> state_{};
  std::uint64_t draws_ = 0;
};

}  // namespace kgsim
