#include "holex/rng.hpp"

#include <cmath>

namespace holex {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& ctr,
                         const std::array<std::uint32_t, 2>& key) {
  const std::uint64_t p0 = std::uint64_t(kPhiloxM0) * ctr[0];
  const std::uint64_t p1 = std::uint64_t(kPhiloxM1) * ctr[2];
  const std::uint32_t hi0 = std::uint32_t(p0 >> 32);
  const std::uint32_t lo0 = std::uint32_t(p0);
  const std::uint32_t hi1 = std::uint32_t(p1 >> 32);
  const std::uint32_t lo1 = std::uint32_t(p1);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    philox_round(counter, key);
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return counter;
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint32_t retry)
    : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)},
      stream_{std::uint32_t(stream), std::uint32_t(stream >> 32)},
      retry_(retry) {}

void CounterRng::refill() {
  // Block index occupies one word; the rest pins the logical stream.
  const std::array<std::uint32_t, 4> counter = {std::uint32_t(block_), stream_[0],
                                                stream_[1], retry_};
  buffer_ = philox4x32(counter, key_);
  ++block_;
  cursor_ = 0;
}

std::uint32_t CounterRng::next_u32() {
  if (cursor_ >= 4) refill();
  return buffer_[cursor_++];
}

std::uint64_t CounterRng::next_u64() {
  const std::uint64_t lo = next_u32();
  const std::uint64_t hi = next_u32();
  return (hi << 32) | lo;
}

double CounterRng::next_unit() {
  // (x + 0.5) / 2^32 stays strictly inside (0, 1).
  return (double(next_u32()) + 0.5) * 0x1p-32;
}

double CounterRng::next_normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = next_unit();
  const double u2 = next_unit();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  cached_normal_ = radius * std::sin(angle);
  has_cached_normal_ = true;
  return radius * std::cos(angle);
}

cdouble CounterRng::next_complex_normal() {
  const double re = next_normal();
  const double im = next_normal();
  return cdouble(re, im) / std::sqrt(2.0);
}

}  // namespace holex
