#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "omegalab/enumerator.hpp"
#include "omegalab/machine.hpp"
#include "omegalab/measures.hpp"

namespace omegalab {

// Throughout, s_1, s_2, ... is the stream of strings with H^(s) < |s| and
//   Z_k(x) = sum_{i<=k} 2^(-|s_i|/x),   W_k(x) = sum_{i<=k} |s_i| 2^(-|s_i|/x).

DyadicInterval z_k(const CompressibleStream& stream, std::size_t k, const Temperature& x,
                   std::size_t prec);
DyadicInterval w_k(const CompressibleStream& stream, std::size_t k, const Temperature& x,
                   std::size_t prec);

inline DyadicInterval z_k(std::size_t k, const Temperature& x, const Enumeration& run,
                          std::size_t prec) {
  return z_k(compressible_stream(run, Temperature(1)), k, x, prec);
}
inline DyadicInterval w_k(std::size_t k, const Temperature& x, const Enumeration& run,
                          std::size_t prec) {
  return w_k(compressible_stream(run, Temperature(1)), k, x, prec);
}

/// First n bits of x in [0, 1), expansion with infinitely many zeros.
BitString leading_bits(const mpq_class& x, std::size_t n);
inline BitString leading_bits(const Temperature& T, std::size_t n) { return leading_bits(T.value(), n); }

/// Constants of the two mean-value gap bounds, derived from certified
/// enclosures only.
///   c_upper: W(t) ln2 / T^2 <= 2^c_upper        (upper gap, Z_k(x) - Z_k(T) < 2^c (x - T))
///   c_lower: ln2 |s_1| 2^(-|s_1|/T) >= 2^-c_lower (lower gap, Z_k(t) - Z_k(T) > 2^-c (t - T))
///   n0: least n with 0.(T|n) + 2^-n < t (and hence for every larger n)
///   n1: least n with (m - c_upper) 2^-m <= 1 for every m >= n
///   n2 = max(n0, n1, c_upper + 1)
struct GapConstants {
  Temperature T{1, 2};
  Temperature t{3, 4};
  std::size_t c_upper = 0;
  std::size_t c_lower = 0;
  std::size_t n0 = 0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  DyadicInterval w_t;          // W(t) over the whole stream
  std::size_t s1_length = 0;
};

GapConstants derive_constants(const Temperature& T, const Temperature& t, const Enumeration& run,
                              std::size_t prec);

std::size_t derive_n0(const Temperature& T, const Temperature& t);
std::size_t derive_n1(std::size_t c);

/// Z_k(x) - Z_k(T) < 2^c_upper (x - T), checked on the upper end of the
/// difference. x must lie strictly between T and t.
bool check_upper_gap(const CompressibleStream& stream, std::size_t k, const GapConstants& constants,
                     const Temperature& x, std::size_t prec);

/// The upper-gap check for every k = 0..stream size; returns the first
/// failing k, if any.
std::optional<std::size_t> first_upper_gap_failure(const CompressibleStream& stream,
                                                   const GapConstants& constants,
                                                   const Temperature& x, std::size_t prec);

/// Z_k(t) - Z_k(T) > 2^-c_lower (t - T), checked on the lower end of the
/// difference. Requires k >= 1 and T < t < 1.
bool check_lower_gap(const CompressibleStream& stream, std::size_t k, const GapConstants& constants,
                     const Temperature& t, std::size_t prec);

std::optional<std::size_t> first_lower_gap_failure(const CompressibleStream& stream,
                                                   const GapConstants& constants,
                                                   const Temperature& t, std::size_t prec);

/// Both halves of  floor(0.(T|n)(n-c)) <= T(n-c)  and  T(n-c) - 2 <= floor(0.(T|n)(n-c)).
std::pair<bool, bool> check_floor_sandwich(const Temperature& T, std::size_t n, std::size_t c);

// ---------------------------------------------------------------------------
// Candidate narrowing: T|n is within 2^c + 1 of t_n as an n-bit integer.

/// 2^(c+1) + 3.
mpz_class candidate_count(std::size_t c);

/// Offset of slot index in the order 0, +1, -1, +2, -2, ...
mpz_class candidate_offset(const mpz_class& index);

/// The candidate in slot index, or nullopt when it leaves the n-bit range.
std::optional<BitString> candidate_at(const BitString& t_n, std::size_t c, const mpz_class& index);

struct Candidate {
  mpz_class offset;
  std::optional<BitString> value;  // nullopt: out of range, flagged and dropped
};
std::vector<Candidate> candidate_set(const BitString& t_n, std::size_t c);

/// The (c+2)-bit selector whose slot holds target, if target is within range.
std::optional<BitString> selector_for(const BitString& t_n, const BitString& target, std::size_t c);

// ---------------------------------------------------------------------------
// Reconstruction of T|n from n, a prefix of CS, and a short selector.

class ReconstructFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything the reconstruction may use: the compressible stream, finite
/// tables f (rationals above T decreasing to T, each below 1) and g (dyadics
/// at or below CS(T) increasing to it), and the selector width constant c.
struct PhiContext {
  CompressibleStream stream;
  std::vector<Temperature> f;
  std::vector<Dyadic> g;
  std::size_t c = 0;
  std::size_t prec = 256;
};

/// f(l) = T + (1 - T) 2^-l and g(m) = floor(CS_lo * 2^m) / 2^m, for l, m = 1..table_len.
PhiContext make_phi_context(const Enumeration& run, const Temperature& T, std::size_t c,
                            std::size_t table_len, std::size_t prec);

struct PhiTrace {
  std::size_t k0 = 0;
  std::size_t l0 = 0;   // 1-based table positions
  std::size_t m0 = 0;
  BitString t_n;
  BitString result;
};

PhiTrace phi_trace(std::size_t n, const BitString& cs_prefix, const BitString& selector,
                   const PhiContext& context);

inline BitString phi_reconstruct(std::size_t n, const BitString& cs_prefix,
                                 const BitString& selector, const PhiContext& context) {
  return phi_trace(n, cs_prefix, selector, context).result;
}

/// CS(T) - Z_k0(T) < 2^-n, checked on the certified upper end.
bool tail_certificate(const CompressibleStream& stream, const Temperature& T, std::size_t k0,
                      std::size_t n, std::size_t prec);

/// The composite machine D: input p q v s with p, q halting programs of U
/// (delimited by U itself), |v| = phi(U(q)), |s| = c + 2; output
/// Phi(phi(U(p)), v, s).
class DMachine {
 public:
  DMachine(Machine u, PhiContext context);

  MachineOutcome decode(const BitString& input, std::uint64_t step_budget) const;

  const PhiContext& context() const noexcept { return context_; }

 private:
  Machine u_;
  PhiContext context_;
};

}  // namespace omegalab
