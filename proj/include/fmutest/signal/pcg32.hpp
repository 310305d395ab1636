#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace fmutest::signal {

/// PCG32 (XSH-RR output, 64-bit LCG state), seeded as in the reference
/// pcg32_srandom_r(initstate, initseq). All project randomness goes through
/// this generator so other implementations can reproduce the streams.
class Pcg32 {
 public:
  using result_type = std::uint32_t;

  explicit Pcg32(std::uint64_t seed, std::uint64_t stream = 0) noexcept {
    inc_ = (stream << 1u) | 1u;
    state_ = 0;
    (*this)();
    state_ += seed;
    (*this)();
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    const auto rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((0u - rot) & 31u));
  }

  /// Unbiased integer in [0, bound), bound > 0 (reference rejection method).
  std::uint32_t bounded(std::uint32_t bound) noexcept {
    const std::uint32_t threshold = (0u - bound) % bound;
    for (;;) {
      const std::uint32_t r = (*this)();
      if (r >= threshold) return r % bound;
    }
  }

  /// 53-bit uniform double in [0, 1).
  double uniform01() noexcept {
    const std::uint64_t a = (*this)() >> 5u;
    const std::uint64_t b = (*this)() >> 6u;
    return (static_cast<double>(a) * 67108864.0 + static_cast<double>(b)) *
           (1.0 / 9007199254740992.0);
  }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

  template <class T>
  void shuffle(std::vector<T>& v) noexcept {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = bounded(static_cast<std::uint32_t>(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 1;
};

}  // namespace fmutest::signal
