#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace povindex {

// Philox4x32-10 counter-based generator. A stream is identified by
// (key, stream_hi, stream_lo); the 64-bit block counter occupies the low
// counter words, so distinct stream ids never share a counter value.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  Philox4x32(std::uint64_t key, std::uint32_t stream_hi, std::uint32_t stream_lo) noexcept
      : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)},
        stream_hi_(stream_hi),
        stream_lo_(stream_lo) {}

  result_type operator()() noexcept {
    if (index_ == 4) {
      const Counter ctr{static_cast<std::uint32_t>(block_),
                        static_cast<std::uint32_t>(block_ >> 32), stream_lo_, stream_hi_};
      buffer_ = bijection(ctr, key_);
      ++block_;
      index_ = 0;
    }
    return buffer_[index_++];
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t hi = (*this)();
    return (hi << 32) | (*this)();
  }

  // Uniform on the open interval (0, 1) with 53 random bits.
  double next_open_unit() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Ten rounds of the Philox round function.
  static Counter bijection(Counter ctr, Key key) noexcept {
    constexpr std::uint32_t kM0 = 0xD2511F53u;
    constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u;
    constexpr std::uint32_t kW1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kW0;
        key[1] += kW1;
      }
      const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
             static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

 private:
  Key key_;
  std::uint32_t stream_hi_;
  std::uint32_t stream_lo_;
  std::uint64_t block_ = 0;
  Counter buffer_{};
  int index_ = 4;
};

}  // namespace povindex
