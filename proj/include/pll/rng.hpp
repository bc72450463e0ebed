#pragma once

// Counter-based pseudo-random generator (Philox4x32-10, Salmon et al.,
// "Parallel random numbers: as easy as 1, 2, 3", SC'11).  A generator is a
// pure function of (seed, stream, counter), so trial i of an experiment can
// draw from its own stream and the results do not depend on thread count or
// execution order.

#include <array>
#include <cstdint>

namespace pll {

// One Philox block: 10 rounds over a 128-bit counter with a 64-bit key.
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
  constexpr std::uint32_t mul0 = 0xD2511F53u, mul1 = 0xCD9E8D57u;
  constexpr std::uint32_t bump0 = 0x9E3779B9u, bump1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += bump0;
      key[1] += bump1;
    }
    const std::uint64_t p0 = std::uint64_t(mul0) * ctr[0];
    const std::uint64_t p1 = std::uint64_t(mul1) * ctr[2];
    ctr = {std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0], std::uint32_t(p1),
           std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1], std::uint32_t(p0)};
  }
  return ctr;
}

// Buffered stream view: (seed, stream) fix the key and the high counter
// words; draws walk the low counter words.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)},
        base_{0, 0, std::uint32_t(stream), std::uint32_t(stream >> 32)} {}

  std::uint32_t next_u32() {
    if (pos_ == 4) refill();
    return buf_[pos_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t lo = next_u32();
    return (std::uint64_t(next_u32()) << 32) | lo;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound), bias-free by rejection.
  std::uint32_t below(std::uint32_t bound) {
    const std::uint32_t threshold = (-bound) % bound;  // 2^32 mod bound
    for (;;) {
      const std::uint32_t x = next_u32();
      if (x >= threshold) return x % bound;
    }
  }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

 private:
  void refill() {
    auto ctr = base_;
    ctr[0] = std::uint32_t(block_);
    ctr[1] = std::uint32_t(block_ >> 32);
    buf_ = philox4x32(ctr, key_);
    ++block_;
    pos_ = 0;
  }

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> base_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
};

}  // namespace pll
