#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace omegalab {

/// Exact rational m / 2^e, kept canonical: m odd, or m = 0 with e = 0.
/// The exponent may be negative, so every integer is a Dyadic too.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long value) : mantissa_(value) { normalize(); }  // NOLINT(implicit)

  /// mantissa / 2^exponent.
  static Dyadic scaled(mpz_class mantissa, std::int64_t exponent);
  /// 2^-k.
  static Dyadic pow2(std::int64_t negated_exponent) { return scaled(1, negated_exponent); }

  const mpz_class& mantissa() const noexcept { return mantissa_; }
  std::int64_t exponent() const noexcept { return exponent_; }
  bool is_zero() const noexcept { return mantissa_ == 0; }
  int sign() const noexcept { return sgn(mantissa_); }

  Dyadic& operator+=(const Dyadic& rhs);
  Dyadic& operator-=(const Dyadic& rhs);
  Dyadic& operator*=(const Dyadic& rhs);
  friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
  friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a -= b; }
  friend Dyadic operator*(Dyadic a, const Dyadic& b) { return a *= b; }
  Dyadic operator-() const;

  /// Multiply by 2^k.
  Dyadic shifted(std::int64_t k) const;

  /// floor(this * 2^bits) and ceil(this * 2^bits).
  mpz_class floor_scaled(std::int64_t bits) const;
  mpz_class ceil_scaled(std::int64_t bits) const;

  mpq_class to_rational() const;

  /// Exact decimal expansion ("-0.0123"); every dyadic terminates in base ten.
  std::string to_decimal() const;

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  void normalize();

  mpz_class mantissa_ = 0;
  std::int64_t exponent_ = 0;
};

std::strong_ordering compare(const Dyadic& a, const mpq_class& b);
inline bool operator<(const Dyadic& a, const mpq_class& b) { return compare(a, b) < 0; }
inline bool operator<(const mpq_class& a, const Dyadic& b) { return compare(b, a) > 0; }

/// Closed interval [lo, hi] enclosing a real; degenerate when exact.
struct DyadicInterval {
  Dyadic lo;
  Dyadic hi;

  static DyadicInterval point(const Dyadic& value) { return {value, value}; }

  bool exact() const noexcept { return lo == hi; }
  Dyadic width() const { return hi - lo; }
  bool contains(const mpq_class& x) const;

  DyadicInterval& operator+=(const DyadicInterval& rhs) {
    lo += rhs.lo;
    hi += rhs.hi;
    return *this;
  }
  friend DyadicInterval operator+(DyadicInterval a, const DyadicInterval& b) { return a += b; }
  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
};

/// Multiplies by a nonnegative integer weight.
DyadicInterval scale(const DyadicInterval& x, const mpz_class& weight);

/// Positive rational a/b in lowest terms.
class Temperature {
 public:
  /// Throws std::invalid_argument unless num > 0 and den > 0.
  Temperature(mpz_class num, mpz_class den = 1);
  Temperature(long num, long den = 1) : Temperature(mpz_class(num), mpz_class(den)) {}  // NOLINT
  explicit Temperature(const mpq_class& value);

  /// Parses "a/b" or "a".
  static Temperature parse(const std::string& text);

  const mpz_class& num() const noexcept { return num_; }
  const mpz_class& den() const noexcept { return den_; }
  mpq_class value() const { return mpq_class(num_, den_); }

  bool is_one() const { return num_ == den_; }
  bool at_most_one() const { return num_ <= den_; }
  bool below_one() const { return num_ < den_; }

  std::string str() const;

  friend bool operator==(const Temperature&, const Temperature&) = default;
  friend std::strong_ordering operator<=>(const Temperature& a, const Temperature& b);

 private:
  mpz_class num_;
  mpz_class den_;
};

}  // namespace omegalab
