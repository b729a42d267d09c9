#pragma once

#include <cstddef>
#include <vector>

#include "omegalab/dyadic.hpp"
#include "omegalab/enumerator.hpp"

namespace omegalab {

/// Encloses 2^(-num/den) in an interval of width <= 2^-prec, rounded
/// outward; degenerate when den divides num.
///
/// Small denominators take the integer den-th root (with remainder) of a
/// shifted power of two. Large denominators, where that power would be
/// astronomically wide, bracket num/den by dyadics and go through a ladder of
/// integer square roots instead.
DyadicInterval pow2_enclosure(const mpz_class& num, const mpz_class& den, std::size_t prec);

namespace detail {
DyadicInterval pow2_by_root(const mpz_class& num, const mpz_class& den, std::size_t prec);
DyadicInterval pow2_by_sqrt_ladder(const mpz_class& num, const mpz_class& den, std::size_t prec);
}  // namespace detail

/// 2^-exponent for a nonnegative rational exponent, kept symbolic so that
/// powers compose exactly: (2^-e)^T = 2^-(eT).
class Pow2Term {
 public:
  explicit Pow2Term(mpq_class exponent);

  const mpq_class& exponent() const noexcept { return exponent_; }
  Pow2Term raised_to(const Temperature& T) const { return Pow2Term(exponent_ * T.value()); }
  DyadicInterval enclosure(std::size_t prec) const;

 private:
  mpq_class exponent_;
};

/// 2^(-length/T).
inline Pow2Term temperature_term(std::size_t length, const Temperature& T) {
  return Pow2Term(mpq_class(mpz_class(length) * T.den(), T.num()));
}

/// Sum of 2^-|p| over discovered halting programs; Omega of U_L when exhaustive.
Dyadic omega_lower(const Enumeration& run);

/// Sum of 2^-|s| over s with H^(s) < |s|.
Dyadic cs_lower(const Enumeration& run);

/// Sum of 2^(-|p|/T) over discovered halting programs.
DyadicInterval z_T_lower(const Enumeration& run, const Temperature& T, std::size_t prec);

/// Sum of 2^(-|s|/T) over s with H^(s) < |s|. T only enters the exponent.
DyadicInterval cs_T_lower(const Enumeration& run, const Temperature& T, std::size_t prec);

/// Sum of 2^-|s| over s with H^(s) < T|s|. T only enters membership.
Dyadic csb_T_lower(const Enumeration& run, const Temperature& T);

/// For T > 1 the true sums diverge; finite values are growth trends only.
inline bool divergent_family(const Temperature& T) { return !T.at_most_one(); }

/// Sum over stream of (term)^T where term = 2^(-|s|/T); collapses to the
/// plain 2^-|s| sum since the exponents cancel.
DyadicInterval t_convergence_sum(const CompressibleStream& stream, const Temperature& T,
                                 std::size_t prec);

/// Sum over stream of (2^-|s|)^T = 2^(-T|s|).
DyadicInterval power_sum(const CompressibleStream& stream, const Temperature& T, std::size_t prec);

/// Running sums of 2^(-|s_i|/x) for i = 1..stream size; element k-1 is Z_k(x).
std::vector<DyadicInterval> temperature_prefix_sums(const CompressibleStream& stream,
                                                    const Temperature& x, std::size_t prec,
                                                    bool weighted = false);

/// Certified enclosure of ln 2 with width <= 2^-prec, from
/// ln 2 = sum_{k>=1} 1/(k 2^k) with tail < 1/((K+1) 2^K).
struct RationalInterval {
  mpq_class lo;
  mpq_class hi;
};
RationalInterval ln2_enclosure(std::size_t prec);

}  // namespace omegalab
