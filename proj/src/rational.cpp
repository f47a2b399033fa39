// Copyright (c) ptapat contributors.
// SPDX-License-Identifier: Apache-2.0
#include "ptapat/rational.hpp"

#include <cctype>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>

namespace ptapat {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::int64_t to_int64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + z.get_str());
  return z.get_si();
}

}  // namespace

Rational::Rational(std::int64_t value) : value_(static_cast<long>(value)) {}

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw std::domain_error("zero denominator");
  value_ = mpq_class(mpz_class(static_cast<long>(numerator)), mpz_class(static_cast<long>(denominator)));
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

std::optional<Rational> Rational::try_parse(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  mpq_class q;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    mpz_class d(std::string(den), 10);
    if (d == 0) return std::nullopt;
    q = mpq_class(mpz_class(std::string(num), 10), d);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) return std::nullopt;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    q = mpq_class(mpz_class(std::string(whole) + std::string(frac), 10), scale);
  } else {
    if (!all_digits(text)) return std::nullopt;
    q = mpq_class(mpz_class(std::string(text), 10));
  }
  q.canonicalize();
  if (negative) q = -q;
  return Rational(std::move(q));
}

Rational Rational::parse(std::string_view text) {
  if (auto r = try_parse(text)) return *r;
  throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
}

Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ + b.value_)); }
Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ - b.value_)); }
Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ * b.value_)); }
Rational operator/(const Rational& a, const Rational& b) {
  if (b.value_ == 0) throw std::domain_error("division by zero");
  return Rational(mpq_class(a.value_ / b.value_));
}
Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }
Rational& Rational::operator+=(const Rational& other) {
  value_ += other.value_;
  return *this;
}
Rational& Rational::operator-=(const Rational& other) {
  value_ -= other.value_;
  return *this;
}

bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  int c = cmp(a.value_, b.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool Rational::is_integer() const { return value_.get_den() == 1; }

std::int64_t Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return to_int64(q);
}

Rational Rational::fractional() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return Rational(mpq_class(value_ - mpq_class(q)));
}

std::string Rational::numerator_string() const { return value_.get_num().get_str(); }
std::string Rational::denominator_string() const { return value_.get_den().get_str(); }

std::string Rational::to_fraction() const {
  if (is_integer()) return numerator_string();
  return numerator_string() + "/" + denominator_string();
}

std::optional<std::string> Rational::to_decimal() const {
  mpz_class den = value_.get_den();
  unsigned long twos = 0;
  unsigned long fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return std::nullopt;
  unsigned long digits = std::max(twos, fives);
  if (digits == 0) return numerator_string();
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  mpz_class scaled = value_.get_num() * scale / value_.get_den();
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string body = scaled.get_str();
  if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
  body.insert(body.size() - digits, ".");
  return negative ? "-" + body : body;
}

std::string Rational::to_display() const {
  if (auto d = to_decimal()) return *d;
  return to_fraction();
}

std::size_t Rational::hash() const {
  std::size_t h = std::hash<std::string>{}(numerator_string());
  return h * 31 + std::hash<std::string>{}(denominator_string());
}

SplitValue split(const Rational& value) {
  if (value.sign() < 0) throw std::domain_error("split: negative value " + value.to_display());
  return {value.floor(), value.fractional()};
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace ptapat
