// Copyright (c) ptapat contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

#include "ptapat/rational.hpp"

namespace ptapat::detail {

/// mt19937_64 with platform-independent bounded draws (the standard
/// distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }

  /// Uniform in [lo, hi], inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(gen_());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  bool coin() { return (gen_() & 1u) != 0; }
  bool chance(int percent) { return range(0, 99) < percent; }

  /// num/den with den in [1, max_den] and value in [lo, hi].
  Rational rational(std::int64_t lo, std::int64_t hi, std::int64_t max_den) {
    const std::int64_t den = range(1, max_den);
    return Rational(range(lo * den, hi * den), den);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace ptapat::detail
