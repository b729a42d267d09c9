#include "omegalab/census.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

namespace omegalab {

CensusRow census(const Enumeration& run, std::size_t n, const Temperature& T) {
  CensusRow row;
  row.n = n;
  for (const auto& entry : compressible_stream(run, T).entries) {
    if (entry.value.size() == n) row.members.push_back(entry.value);
  }
  std::sort(row.members.begin(), row.members.end());
  row.count = row.members.size();
  row.h_up_n = complexity_upper(run, BitString::from_natural(n));
  return row;
}

std::vector<ProfileRow> census_profile(const Enumeration& run, std::size_t nmax,
                                       const Temperature& T) {
  std::map<std::size_t, std::size_t> counts;
  for (const auto& entry : compressible_stream(run, T).entries) ++counts[entry.value.size()];

  std::vector<ProfileRow> rows;
  rows.reserve(nmax + 1);
  for (std::size_t n = 0; n <= nmax; ++n) {
    ProfileRow row;
    row.n = n;
    if (auto it = counts.find(n); it != counts.end()) row.count = it->second;
    if (row.count > 0) row.gap = static_cast<double>(n) - std::log2(static_cast<double>(row.count));
    row.h_up_n = complexity_upper(run, BitString::from_natural(n));
    rows.push_back(row);
  }
  return rows;
}

std::string profile_csv(const std::vector<ProfileRow>& rows) {
  std::string out = "n,count,two_pow_n,gap,h_upper_n\n";
  for (const auto& row : rows) {
    mpz_class two_pow;
    mpz_setbit(two_pow.get_mpz_t(), row.n);
    char gap[32] = "null";
    if (row.gap) std::snprintf(gap, sizeof gap, "%.6f", *row.gap);
    out += std::to_string(row.n) + ',' + std::to_string(row.count) + ',' + two_pow.get_str() + ',' +
           gap + ',' + (row.h_up_n ? std::to_string(*row.h_up_n) : std::string("null")) + '\n';
  }
  return out;
}

}  // namespace omegalab
