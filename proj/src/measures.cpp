#include "omegalab/measures.hpp"

#include <bit>
#include <map>
#include <stdexcept>

namespace omegalab {

namespace {

struct SplitExponent {
  std::int64_t whole;   // floor(num/den)
  mpz_class fraction;   // num mod den
};

SplitExponent split(const mpz_class& num, const mpz_class& den) {
  if (num < 0) throw std::invalid_argument("pow2_enclosure: exponent numerator must be >= 0");
  if (den <= 0) throw std::invalid_argument("pow2_enclosure: denominator must be >= 1");
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (!q.fits_slong_p()) throw std::overflow_error("pow2_enclosure: exponent too large");
  return {q.get_si(), r};
}

mpz_class pow2z(std::uint64_t k) {
  mpz_class r;
  mpz_setbit(r.get_mpz_t(), k);
  return r;
}

mpz_class ceil_sqrt(const mpz_class& n) {
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
  if (s * s < n) ++s;
  return s;
}

// Floor/ceil of (a * b) / 2^g for nonnegative a, b.
mpz_class mul_floor(const mpz_class& a, const mpz_class& b, std::uint64_t g) {
  mpz_class r = a * b;
  mpz_fdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), g);
  return r;
}
mpz_class mul_ceil(const mpz_class& a, const mpz_class& b, std::uint64_t g) {
  mpz_class r = a * b;
  mpz_cdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), g);
  return r;
}

constexpr unsigned long kRootDenominatorLimit = 4096;
constexpr std::size_t kRootBitLimit = std::size_t{1} << 21;

}  // namespace

namespace detail {

DyadicInterval pow2_by_root(const mpz_class& num, const mpz_class& den, std::size_t prec) {
  if (prec < 1) throw std::invalid_argument("pow2_enclosure: prec must be >= 1");
  auto [whole, r] = split(num, den);
  if (r == 0) return DyadicInterval::point(Dyadic::pow2(whole));
  if (!den.fits_ulong_p()) throw std::invalid_argument("pow2_by_root: denominator too large");

  // 2^(-r/den) = (2^(den*P - r))^(1/den) / 2^P, and the root is irrational
  // because den does not divide r.
  const unsigned long d = den.get_ui();
  const std::uint64_t P = prec + 1;
  const mpz_class shifted = pow2z(d * P - r.get_ui());
  mpz_class root;
  mpz_root(root.get_mpz_t(), shifted.get_mpz_t(), d);
  const std::int64_t e = static_cast<std::int64_t>(P) + whole;
  return {Dyadic::scaled(root, e), Dyadic::scaled(root + 1, e)};
}

DyadicInterval pow2_by_sqrt_ladder(const mpz_class& num, const mpz_class& den, std::size_t prec) {
  if (prec < 1) throw std::invalid_argument("pow2_enclosure: prec must be >= 1");
  auto [whole, r] = split(num, den);
  if (r == 0) return DyadicInterval::point(Dyadic::pow2(whole));

  // 2^(-r/den) lies between 2^(-m_hi/2^J) and 2^(-m_lo/2^J), and each of
  // those is a product of the factors R_j = 2^(-2^-j) picked out by the bits
  // of m. R_j is the j-fold square root of 1/2, kept in G-bit fixed point
  // with floor on the low side and ceiling on the high side.
  for (std::size_t guard = 8;; guard += 8) {
    const std::size_t J = prec + 4;
    const std::size_t G = prec + guard + 2 * static_cast<std::size_t>(std::bit_width(J));

    mpz_class scaled_r = r * pow2z(J);
    mpz_class m_lo, rem;
    mpz_fdiv_qr(m_lo.get_mpz_t(), rem.get_mpz_t(), scaled_r.get_mpz_t(), den.get_mpz_t());
    const mpz_class m_hi = rem == 0 ? m_lo : m_lo + 1;

    std::vector<mpz_class> lo_factor(J + 1), hi_factor(J + 1);
    mpz_sqrt(lo_factor[1].get_mpz_t(), pow2z(2 * G - 1).get_mpz_t());
    hi_factor[1] = lo_factor[1] + 1;
    for (std::size_t j = 2; j <= J; ++j) {
      mpz_sqrt(lo_factor[j].get_mpz_t(), mpz_class(lo_factor[j - 1] * pow2z(G)).get_mpz_t());
      hi_factor[j] = ceil_sqrt(hi_factor[j - 1] * pow2z(G));
    }

    const mpz_class one = pow2z(G);
    auto product = [&](const mpz_class& m, bool upper) {
      if (m == pow2z(J)) return mpz_class(pow2z(G - 1));  // exactly 1/2
      mpz_class acc = one;
      for (std::size_t j = 1; j <= J; ++j) {
        if (!mpz_tstbit(m.get_mpz_t(), J - j)) continue;
        acc = upper ? mul_ceil(acc, hi_factor[j], G) : mul_floor(acc, lo_factor[j], G);
      }
      return acc;
    };
    const mpz_class lo = product(m_hi, false);
    const mpz_class hi = product(m_lo, true);
    if (hi - lo > pow2z(G - prec - 2)) continue;

    // Scale by 2^-whole and snap outward to the 2^-(prec+whole+1) grid.
    const std::int64_t grid = static_cast<std::int64_t>(prec) + whole + 1;
    const Dyadic dlo = Dyadic::scaled(lo, static_cast<std::int64_t>(G) + whole);
    const Dyadic dhi = Dyadic::scaled(hi, static_cast<std::int64_t>(G) + whole);
    return {Dyadic::scaled(dlo.floor_scaled(grid), grid), Dyadic::scaled(dhi.ceil_scaled(grid), grid)};
  }
}

}  // namespace detail

DyadicInterval pow2_enclosure(const mpz_class& num, const mpz_class& den, std::size_t prec) {
  if (den > 0 && den <= kRootDenominatorLimit && den.get_ui() * (prec + 1) <= kRootBitLimit) {
    return detail::pow2_by_root(num, den, prec);
  }
  return detail::pow2_by_sqrt_ladder(num, den, prec);
}

// ---------------------------------------------------------------------------

Pow2Term::Pow2Term(mpq_class exponent) : exponent_(std::move(exponent)) {
  exponent_.canonicalize();
  if (exponent_ < 0) throw std::invalid_argument("Pow2Term: negative exponent");
}

DyadicInterval Pow2Term::enclosure(std::size_t prec) const {
  return pow2_enclosure(exponent_.get_num(), exponent_.get_den(), prec);
}

namespace {

// Sums 2^(-length/T) weighted by multiplicity.
DyadicInterval sum_by_length(const std::map<std::size_t, std::size_t>& multiplicity,
                             const Temperature& T, std::size_t prec) {
  DyadicInterval total;
  for (const auto& [length, count] : multiplicity) {
    total += scale(temperature_term(length, T).enclosure(prec), mpz_class(count));
  }
  return total;
}

std::map<std::size_t, std::size_t> program_lengths(const Enumeration& run) {
  std::map<std::size_t, std::size_t> m;
  for (const auto& e : run.events()) ++m[e.program.size()];
  return m;
}

std::map<std::size_t, std::size_t> member_lengths(const CompressibleStream& stream) {
  std::map<std::size_t, std::size_t> m;
  for (const auto& e : stream.entries) ++m[e.value.size()];
  return m;
}

Dyadic dyadic_length_sum(const std::map<std::size_t, std::size_t>& multiplicity) {
  Dyadic total;
  for (const auto& [length, count] : multiplicity) {
    total += Dyadic::scaled(mpz_class(count), static_cast<std::int64_t>(length));
  }
  return total;
}

}  // namespace

Dyadic omega_lower(const Enumeration& run) { return dyadic_length_sum(program_lengths(run)); }

Dyadic cs_lower(const Enumeration& run) {
  return dyadic_length_sum(member_lengths(compressible_stream(run, Temperature(1))));
}

DyadicInterval z_T_lower(const Enumeration& run, const Temperature& T, std::size_t prec) {
  return sum_by_length(program_lengths(run), T, prec);
}

DyadicInterval cs_T_lower(const Enumeration& run, const Temperature& T, std::size_t prec) {
  return sum_by_length(member_lengths(compressible_stream(run, Temperature(1))), T, prec);
}

Dyadic csb_T_lower(const Enumeration& run, const Temperature& T) {
  return dyadic_length_sum(member_lengths(compressible_stream(run, T)));
}

DyadicInterval t_convergence_sum(const CompressibleStream& stream, const Temperature& T,
                                 std::size_t prec) {
  DyadicInterval total;
  for (const auto& e : stream.entries) {
    total += temperature_term(e.value.size(), T).raised_to(T).enclosure(prec);
  }
  return total;
}

DyadicInterval power_sum(const CompressibleStream& stream, const Temperature& T, std::size_t prec) {
  DyadicInterval total;
  for (const auto& e : stream.entries) {
    total += Pow2Term(mpq_class(e.value.size())).raised_to(T).enclosure(prec);
  }
  return total;
}

std::vector<DyadicInterval> temperature_prefix_sums(const CompressibleStream& stream,
                                                    const Temperature& x, std::size_t prec,
                                                    bool weighted) {
  std::map<std::size_t, DyadicInterval> term_cache;
  std::vector<DyadicInterval> sums;
  sums.reserve(stream.size());
  DyadicInterval running;
  for (const auto& e : stream.entries) {
    const std::size_t len = e.value.size();
    auto it = term_cache.find(len);
    if (it == term_cache.end()) {
      it = term_cache.emplace(len, temperature_term(len, x).enclosure(prec)).first;
    }
    running += weighted ? scale(it->second, mpz_class(len)) : it->second;
    sums.push_back(running);
  }
  return sums;
}

RationalInterval ln2_enclosure(std::size_t prec) {
  const std::size_t K = prec + 1;
  mpq_class partial = 0;
  mpz_class pow = 1;
  for (std::size_t k = 1; k <= K; ++k) {
    pow *= 2;
    mpq_class term(mpz_class(1), mpz_class(k) * pow);
    term.canonicalize();
    partial += term;
  }
  mpq_class tail(mpz_class(1), mpz_class(K + 1) * pow);
  tail.canonicalize();
  return {partial, partial + tail};
}

}  // namespace omegalab
