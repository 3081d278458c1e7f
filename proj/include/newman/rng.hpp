#pragma once
// Deterministic 64-bit linear congruential generator. All seeded
// sampling in the library goes through this generator so that reports
// reproduce bit-for-bit across platforms and worker counts.
//
//   state <- state * 6364136223846793005 + 1442695040888963407 (mod 2^64)
//
// (Knuth's MMIX parameters.) below(n) takes the state's top 48 bits
// modulo n; the modulo bias is negligible at the ranges used here.

#include <cstdint>

namespace newman {

class Lcg64 {
 public:
  explicit Lcg64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_;
  }

  // Draw in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) { return (next() >> 16) % n; }

 private:
  std::uint64_t state_;
};

}  // namespace newman
