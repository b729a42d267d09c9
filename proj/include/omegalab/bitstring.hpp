#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace omegalab {

/// Finite binary string over {0,1}, stored as ASCII '0'/'1'.
///
/// Strings double as natural numbers through phi(s) = (1s read as binary) - 1,
/// which enumerates {0,1}* as lambda, 0, 1, 00, 01, 10, 11, 000, ...
/// The comparison operators follow that order (length first, then
/// lexicographic), so sorting a container of BitStrings sorts by phi.
class BitString {
 public:
  BitString() = default;

  /// Throws std::invalid_argument on any character other than '0' or '1'.
  explicit BitString(std::string_view bits);

  static BitString zeros(std::size_t n);

  /// Inverse of phi.
  static BitString from_natural(const mpz_class& n);
  static BitString from_natural(std::uint64_t n) { return from_natural(mpz_class(n)); }

  /// The width-bit binary numeral of value. Requires 0 <= value < 2^width.
  static BitString from_numeral(const mpz_class& value, std::size_t width);

  /// phi(s).
  mpz_class to_natural() const;

  /// Value of s read as a binary numeral (the "dyadic integer" reading);
  /// the empty string reads as 0.
  mpz_class numeral() const;

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::size_t i) const noexcept { return bits_[i] == '1'; }

  void push_back(bool bit) { bits_.push_back(bit ? '1' : '0'); }
  BitString& operator+=(const BitString& rhs) {
    bits_ += rhs.bits_;
    return *this;
  }
  friend BitString operator+(BitString lhs, const BitString& rhs) { return lhs += rhs; }

  BitString substr(std::size_t pos, std::size_t len = std::string::npos) const;
  BitString reversed() const;
  bool is_prefix_of(const BitString& other) const noexcept;

  const std::string& str() const noexcept { return bits_; }

  friend bool operator==(const BitString&, const BitString&) = default;
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) noexcept {
    if (auto c = a.bits_.size() <=> b.bits_.size(); c != 0) return c;
    return a.bits_.compare(b.bits_) <=> 0;
  }

 private:
  std::string bits_;
};

/// Elias gamma codeword of n >= 1.
BitString encode_gamma(std::uint64_t n);

/// Binary logarithm rounded down; n >= 1.
std::size_t floor_log2(std::uint64_t n) noexcept;

}  // namespace omegalab

template <>
struct std::hash<omegalab::BitString> {
  std::size_t operator()(const omegalab::BitString& s) const noexcept {
    return std::hash<std::string>{}(s.str());
  }
};
