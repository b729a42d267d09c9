#include "omegalab/bitstring.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace omegalab {

BitString::BitString(std::string_view bits) : bits_(bits) {
  if (!std::all_of(bits_.begin(), bits_.end(), [](char c) { return c == '0' || c == '1'; })) {
    throw std::invalid_argument("BitString: expected only '0' and '1', got \"" + bits_ + "\"");
  }
}

BitString BitString::zeros(std::size_t n) {
  BitString s;
  s.bits_.assign(n, '0');
  return s;
}

BitString BitString::from_natural(const mpz_class& n) {
  if (n < 0) throw std::invalid_argument("BitString::from_natural: negative value");
  mpz_class shifted = n + 1;
  std::string digits = shifted.get_str(2);
  return BitString(std::string_view(digits).substr(1));
}

BitString BitString::from_numeral(const mpz_class& value, std::size_t width) {
  if (value < 0 || mpz_sizeinbase(value.get_mpz_t(), 2) > width + (value == 0 ? 1 : 0)) {
    throw std::invalid_argument("BitString::from_numeral: value does not fit in width");
  }
  BitString s = zeros(width);
  for (std::size_t i = 0; i < width; ++i) {
    if (mpz_tstbit(value.get_mpz_t(), width - 1 - i)) s.bits_[i] = '1';
  }
  return s;
}

mpz_class BitString::to_natural() const {
  mpz_class v(std::string("1") + bits_, 2);
  return v - 1;
}

mpz_class BitString::numeral() const {
  if (bits_.empty()) return 0;
  return mpz_class(bits_, 2);
}

BitString BitString::substr(std::size_t pos, std::size_t len) const {
  BitString s;
  s.bits_ = bits_.substr(pos, len);
  return s;
}

BitString BitString::reversed() const {
  BitString s = *this;
  std::reverse(s.bits_.begin(), s.bits_.end());
  return s;
}

bool BitString::is_prefix_of(const BitString& other) const noexcept {
  return bits_.size() <= other.bits_.size() &&
         std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
}

std::size_t floor_log2(std::uint64_t n) noexcept {
  return static_cast<std::size_t>(std::bit_width(n)) - 1;
}

BitString encode_gamma(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("encode_gamma: n must be positive");
  const std::size_t width = floor_log2(n) + 1;
  return BitString::zeros(width - 1) + BitString::from_numeral(mpz_class(n), width);
}

}  // namespace omegalab
