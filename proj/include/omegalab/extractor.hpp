#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "omegalab/enumerator.hpp"

namespace omegalab {

/// Which sum the cutoff search walks.
///   CS:  terms 2^(-|s_i|/T) over strings with H^(s) < |s|
///   CSb: terms 2^-|s_i|     over strings with H^(s) < T|s|
enum class SumMode { CS, CSb };

std::string_view to_string(SumMode mode) noexcept;
SumMode parse_sum_mode(std::string_view text);

class NoCutoff : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The stream whose terms make up the sum for (T, mode).
CompressibleStream mode_stream(const Enumeration& run, const Temperature& T, SumMode mode);

/// Running lower/upper enclosures of the sum for (T, mode); element k-1
/// covers the first k terms.
std::vector<DyadicInterval> mode_prefix_sums(const Enumeration& run, const Temperature& T,
                                             SumMode mode, std::size_t prec);

/// The first n bits of the sum's expansion with infinitely many ones, i.e.
/// the largest n-bit a with 0.a strictly below the sum. Throws when the sum
/// is zero.
BitString sum_prefix(const Enumeration& run, std::size_t n, const Temperature& T, SumMode mode,
                     std::size_t prec);

/// Least k whose partial sum is certified (by its lower end) to exceed
/// 0.alpha_prefix. Throws NoCutoff when even the full sum does not.
std::size_t find_cutoff(const BitString& alpha_prefix, const Temperature& T, SumMode mode,
                        const Enumeration& run, std::size_t prec);

struct Extraction {
  BitString value;
  std::size_t target_length = 0;
  std::optional<BitString> alpha_prefix;  // absent when the sum is zero
  std::size_t cutoff = 0;
  bool advisory = false;  // enumeration was not exhaustive
};

/// Recovers a string of length floor(Tn) (CS) or n (CSb) outside the
/// compressible set: compute the n-bit prefix of the sum, cut the stream off
/// where the prefix is exceeded, and take the least string of the target
/// length that the first k stream entries do not mention.
Extraction extract_incompressible_traced(std::size_t n, const Temperature& T, SumMode mode,
                                         const Enumeration& run, std::size_t prec);

inline BitString extract_incompressible(std::size_t n, const Temperature& T, SumMode mode,
                                        const Enumeration& run, std::size_t prec) {
  return extract_incompressible_traced(n, T, mode, run, prec).value;
}

/// True iff no discovered program for s is shorter than T|s|.
bool verify_incompressible(const BitString& s, const Temperature& T, const Enumeration& run);

/// Least string of length m not in excluded (any order).
BitString least_absent(std::size_t m, std::vector<BitString> excluded);

}  // namespace omegalab
