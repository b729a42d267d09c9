#include "omegalab/dyadic.hpp"

#include <stdexcept>

namespace omegalab {

namespace {

std::strong_ordering ordering_from(int c) {
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

mpz_class mul_2exp(const mpz_class& m, std::uint64_t k) {
  mpz_class r;
  mpz_mul_2exp(r.get_mpz_t(), m.get_mpz_t(), k);
  return r;
}

}  // namespace

Dyadic Dyadic::scaled(mpz_class mantissa, std::int64_t exponent) {
  Dyadic d;
  d.mantissa_ = std::move(mantissa);
  d.exponent_ = exponent;
  d.normalize();
  return d;
}

void Dyadic::normalize() {
  if (mantissa_ == 0) {
    exponent_ = 0;
    return;
  }
  const auto tz = mpz_scan1(mantissa_.get_mpz_t(), 0);
  if (tz > 0) {
    mpz_tdiv_q_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), tz);
    exponent_ -= static_cast<std::int64_t>(tz);
  }
}

Dyadic& Dyadic::operator+=(const Dyadic& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) return *this = rhs;
  const std::int64_t e = std::max(exponent_, rhs.exponent_);
  mantissa_ = mul_2exp(mantissa_, e - exponent_) + mul_2exp(rhs.mantissa_, e - rhs.exponent_);
  exponent_ = e;
  normalize();
  return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& rhs) { return *this += -rhs; }

Dyadic& Dyadic::operator*=(const Dyadic& rhs) {
  mantissa_ *= rhs.mantissa_;
  exponent_ += rhs.exponent_;
  normalize();
  return *this;
}

Dyadic Dyadic::operator-() const {
  Dyadic d = *this;
  d.mantissa_ = -d.mantissa_;
  return d;
}

Dyadic Dyadic::shifted(std::int64_t k) const { return scaled(mantissa_, exponent_ - k); }

mpz_class Dyadic::floor_scaled(std::int64_t bits) const {
  const std::int64_t shift = bits - exponent_;
  if (shift >= 0) return mul_2exp(mantissa_, shift);
  mpz_class r;
  mpz_fdiv_q_2exp(r.get_mpz_t(), mantissa_.get_mpz_t(), -shift);
  return r;
}

mpz_class Dyadic::ceil_scaled(std::int64_t bits) const {
  const std::int64_t shift = bits - exponent_;
  if (shift >= 0) return mul_2exp(mantissa_, shift);
  mpz_class r;
  mpz_cdiv_q_2exp(r.get_mpz_t(), mantissa_.get_mpz_t(), -shift);
  return r;
}

mpq_class Dyadic::to_rational() const {
  mpq_class q(mantissa_);
  if (exponent_ >= 0) {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), exponent_);
  } else {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), -exponent_);
  }
  return q;
}

std::string Dyadic::to_decimal() const {
  if (exponent_ <= 0) return mul_2exp(mantissa_, -exponent_).get_str();
  // m / 2^e = m * 5^e / 10^e
  mpz_class five_pow;
  mpz_ui_pow_ui(five_pow.get_mpz_t(), 5, exponent_);
  mpz_class digits_value = abs(mantissa_) * five_pow;
  std::string digits = digits_value.get_str();
  const auto frac = static_cast<std::size_t>(exponent_);
  if (digits.size() <= frac) digits.insert(0, frac + 1 - digits.size(), '0');
  digits.insert(digits.size() - frac, ".");
  return (mantissa_ < 0 ? "-" : "") + digits;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  if (a.exponent_ == b.exponent_) return ordering_from(cmp(a.mantissa_, b.mantissa_));
  const std::int64_t e = std::max(a.exponent_, b.exponent_);
  return ordering_from(cmp(mul_2exp(a.mantissa_, e - a.exponent_),
                           mul_2exp(b.mantissa_, e - b.exponent_)));
}

std::strong_ordering compare(const Dyadic& a, const mpq_class& b) {
  return ordering_from(cmp(a.to_rational(), b));
}

bool DyadicInterval::contains(const mpq_class& x) const {
  return compare(lo, x) <= 0 && compare(hi, x) >= 0;
}

DyadicInterval scale(const DyadicInterval& x, const mpz_class& weight) {
  if (weight < 0) throw std::invalid_argument("scale: negative weight");
  const Dyadic w = Dyadic::scaled(weight, 0);
  return {x.lo * w, x.hi * w};
}

// ---------------------------------------------------------------------------

Temperature::Temperature(mpz_class num, mpz_class den) : num_(std::move(num)), den_(std::move(den)) {
  if (num_ <= 0 || den_ <= 0) {
    throw std::invalid_argument("Temperature must be a positive rational");
  }
  mpz_class g = gcd(num_, den_);
  num_ /= g;
  den_ /= g;
}

Temperature::Temperature(const mpq_class& value)
    : Temperature(value.get_num(), value.get_den()) {}

Temperature Temperature::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Temperature(mpz_class(text), mpz_class(1));
    return Temperature(mpz_class(text.substr(0, slash)), mpz_class(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("bad temperature \"" + text + "\": expected a/b with a, b > 0");
  }
}

std::string Temperature::str() const {
  return den_ == 1 ? num_.get_str() : num_.get_str() + "/" + den_.get_str();
}

std::strong_ordering operator<=>(const Temperature& a, const Temperature& b) {
  return ordering_from(cmp(a.value(), b.value()));
}

}  // namespace omegalab
