#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omegalab/enumerator.hpp"

namespace omegalab {

/// S(n) = { s : |s| = n, H^(s) < T n } under one enumeration.
struct CensusRow {
  std::size_t n = 0;
  std::vector<BitString> members;  // sorted
  std::size_t count = 0;
  std::optional<std::size_t> h_up_n;  // H^ of the string identified with n
};

CensusRow census(const Enumeration& run, std::size_t n, const Temperature& T);

/// Diagnostic row: gap = n - log2(count) is reported next to H^(n) but no
/// relation between them is asserted.
struct ProfileRow {
  std::size_t n = 0;
  std::size_t count = 0;
  std::optional<double> gap;
  std::optional<std::size_t> h_up_n;
};

std::vector<ProfileRow> census_profile(const Enumeration& run, std::size_t nmax,
                                       const Temperature& T = Temperature(1));

/// CSV with header n,count,two_pow_n,gap,h_upper_n; null marks missing values.
std::string profile_csv(const std::vector<ProfileRow>& rows);

}  // namespace omegalab
