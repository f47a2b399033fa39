// Copyright (c) ptapat contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ptapat {

/// Exact rational number. Always held in lowest terms with a positive
/// denominator, so structural equality is numeric equality.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value);  // NOLINT: integers convert implicitly
  Rational(std::int64_t numerator, std::int64_t denominator);

  /// Accepts "12", "4.296", "3/7" and a leading '-'. Decimals are exact.
  static Rational parse(std::string_view text);
  static std::optional<Rational> try_parse(std::string_view text);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;
  Rational& operator+=(const Rational& other);
  Rational& operator-=(const Rational& other);

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  int sign() const { return sgn(value_); }
  bool is_integer() const;

  /// Greatest integer not above the value. Throws std::overflow_error when it
  /// does not fit in 64 bits.
  std::int64_t floor() const;
  /// value - floor(value), in [0, 1).
  Rational fractional() const;

  std::string numerator_string() const;
  std::string denominator_string() const;

  /// "n" or "n/d".
  std::string to_fraction() const;
  /// Finite decimal expansion when the denominator is 2^a * 5^b.
  std::optional<std::string> to_decimal() const;
  /// Decimal when it terminates, fraction otherwise.
  std::string to_display() const;

  std::size_t hash() const;
  const mpq_class& raw() const { return value_; }

 private:
  explicit Rational(mpq_class value);
  mpq_class value_;
};

/// Decomposition v = integral + fractional with 0 <= fractional < 1.
struct SplitValue {
  std::int64_t integral;
  Rational fractional;
};

/// Throws std::domain_error for negative input.
SplitValue split(const Rational& value);

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

}  // namespace ptapat

template <>
struct std::hash<ptapat::Rational> {
  std::size_t operator()(const ptapat::Rational& r) const noexcept { return r.hash(); }
};
