#pragma once

#include <array>
#include <cstdint>

#include "holex/common.hpp"

namespace holex {

// Counter-based generator (Philox4x32-10). A draw sequence is fully
// determined by (seed, stream, retry), independent of thread layout,
// so parallel runs can replay any single stream in isolation.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint32_t retry = 0);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  double next_unit();    // uniform on (0, 1)
  double next_normal();  // standard real Gaussian
  cdouble next_complex_normal();  // E|z|^2 = 1

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 2> stream_;
  std::uint32_t retry_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_ = {};
  int cursor_ = 4;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

// Raw Philox4x32-10 block function, exposed for tests.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

}  // namespace holex
