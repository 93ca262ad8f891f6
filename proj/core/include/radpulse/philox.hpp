#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace radpulse {

// Philox4x32-10 counter-based generator (Salmon et al. constants).
// Each (key, counter) pair is an independent stream, so one stream per
// Monte Carlo path gives results that do not depend on thread count.
class Philox4x32 {
public:
  Philox4x32(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        ctr_{0, 0, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {}

  // Next 32-bit word; refills a 4-word block every fourth call.
  std::uint32_t next_u32() {
    if (idx_ == 4) {
      block_ = round10(ctr_, key_);
      if (++ctr_[0] == 0) ++ctr_[1]; // 64-bit in-stream counter
      idx_ = 0;
    }
    return block_[idx_++];
  }

  // Uniform on (0,1), 53-bit, never exactly 0 or 1.
  double next_double() {
    const std::uint64_t hi = next_u32();
    const std::uint64_t lo = next_u32();
    const std::uint64_t bits = ((hi << 32) | lo) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; draws come in pairs.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

private:
  static std::array<std::uint32_t, 4> round10(std::array<std::uint32_t, 4> c,
                                              std::array<std::uint32_t, 2> k) {
    constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
    constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
    for (int r = 0; r < 10; ++r) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(M0) * c[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(M1) * c[2];
      const std::uint32_t h0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t l0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t h1 = static_cast<std::uint32_t>(p1 >> 32);
      const std::uint32_t l1 = static_cast<std::uint32_t>(p1);
      c = {h1 ^ c[1] ^ k[0], l1, h0 ^ c[3] ^ k[1], l0};
      k[0] += W0;
      k[1] += W1;
    }
    return c;
  }

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> ctr_;
  std::array<std::uint32_t, 4> block_{};
  int idx_ = 4;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

} // namespace radpulse
