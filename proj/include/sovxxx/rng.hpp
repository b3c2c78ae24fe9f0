#pragma once

#include <cstdint>

#include "sovxxx/types.hpp"

namespace sov {

// SplitMix64 in counter mode: draw k of stream s is mix64(s + (k+1)*gamma).
// Reproducible from (seed, counter) in any language with 64-bit unsigned ints.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  double uniform();              // [0,1) from the top 53 bits
  double uniform(double lo, double hi);
  double normal();               // Box-Muller, one value per two uniforms
  cplx complex_normal(double re_scale, double im_scale);
  std::uint64_t counter() const { return counter_; }

  static std::uint64_t mix64(std::uint64_t z);

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace sov
