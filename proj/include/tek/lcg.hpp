#pragma once

#include <cstdint>

#include "tek/error.hpp"

namespace tek {

/// Multiplicative congruential generator x <- a x mod (2^63 - 25), a = 2806196910506780709.
/// The state never reaches 0; seed 0 (mod m) is mapped to 1.
class Lcg {
 public:
  static constexpr std::uint64_t kModulus = (std::uint64_t{1} << 63) - 25;
  static constexpr std::uint64_t kMultiplier = 2806196910506780709ULL;

  explicit Lcg(std::uint64_t seed) : state_(seed % kModulus) {
    if (state_ == 0) state_ = 1;
  }

  std::uint64_t next() {
    state_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(state_) * kMultiplier) % kModulus);
    return state_;
  }

  /// Uniform in [0, n) by rejection on the top partial block of [1, m - 1].
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw SemanticError("empty sampling range");
    const std::uint64_t span = kModulus - 1;
    const std::uint64_t limit = span - span % n;
    for (;;) {
      const std::uint64_t x = next() - 1;
      if (x < limit) return x % n;
    }
  }

  /// Uniform integer in [lo, hi].
  long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1)); }

 private:
  std::uint64_t state_;
};

}  // namespace tek
