#include "omegalab/extractor.hpp"

#include <algorithm>

#include "omegalab/measures.hpp"

namespace omegalab {

std::string_view to_string(SumMode mode) noexcept { return mode == SumMode::CS ? "cs" : "csb"; }

SumMode parse_sum_mode(std::string_view text) {
  if (text == "cs") return SumMode::CS;
  if (text == "csb") return SumMode::CSb;
  throw std::invalid_argument("unknown mode \"" + std::string(text) + "\" (expected cs or csb)");
}

CompressibleStream mode_stream(const Enumeration& run, const Temperature& T, SumMode mode) {
  return compressible_stream(run, mode == SumMode::CS ? Temperature(1) : T);
}

std::vector<DyadicInterval> mode_prefix_sums(const Enumeration& run, const Temperature& T,
                                             SumMode mode, std::size_t prec) {
  const CompressibleStream stream = mode_stream(run, T, mode);
  return temperature_prefix_sums(stream, mode == SumMode::CS ? T : Temperature(1), prec);
}

BitString sum_prefix(const Enumeration& run, std::size_t n, const Temperature& T, SumMode mode,
                     std::size_t prec) {
  for (std::size_t p = std::max(prec, n + 8); p <= 64 * (n + prec + 8); p *= 2) {
    const auto sums = mode_prefix_sums(run, T, mode, p);
    if (sums.empty()) break;
    const DyadicInterval& total = sums.back();
    if (total.hi.is_zero()) break;
    const auto bits = static_cast<std::int64_t>(n);
    const mpz_class c_lo = total.lo.ceil_scaled(bits);
    if (c_lo != total.hi.ceil_scaled(bits)) continue;  // not yet resolved at this precision
    if (c_lo <= 0) break;
    mpz_class a = c_lo - 1;
    mpz_class limit;
    mpz_setbit(limit.get_mpz_t(), n);
    if (a >= limit) throw std::domain_error("sum_prefix: sum is not below 1");
    return BitString::from_numeral(a, n);
  }
  throw std::domain_error("sum_prefix: sum is zero or could not be resolved to " +
                          std::to_string(n) + " bits");
}

std::size_t find_cutoff(const BitString& alpha_prefix, const Temperature& T, SumMode mode,
                        const Enumeration& run, std::size_t prec) {
  const Dyadic alpha = Dyadic::scaled(alpha_prefix.numeral(), static_cast<std::int64_t>(alpha_prefix.size()));
  const auto sums = mode_prefix_sums(run, T, mode, prec);
  for (std::size_t k = 0; k < sums.size(); ++k) {
    if (sums[k].lo > alpha) return k + 1;
  }
  throw NoCutoff("find_cutoff: partial sums never exceed 0." + alpha_prefix.str() +
                 " at this budget");
}

BitString least_absent(std::size_t m, std::vector<BitString> excluded) {
  std::vector<mpz_class> values;
  values.reserve(excluded.size());
  for (const auto& s : excluded) {
    if (s.size() == m) values.push_back(s.numeral());
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  mpz_class candidate = 0;
  for (const auto& v : values) {
    if (v != candidate) break;
    ++candidate;
  }
  mpz_class limit;
  mpz_setbit(limit.get_mpz_t(), m);
  if (candidate >= limit) throw std::domain_error("least_absent: every string of length m excluded");
  return BitString::from_numeral(candidate, m);
}

Extraction extract_incompressible_traced(std::size_t n, const Temperature& T, SumMode mode,
                                         const Enumeration& run, std::size_t prec) {
  if (!T.at_most_one()) throw std::invalid_argument("extract: T must be at most 1");
  Extraction result;
  result.advisory = !run.exhaustive();
  if (mode == SumMode::CS) {
    mpz_class m = mpz_class(n) * T.num() / T.den();  // floor(Tn)
    result.target_length = m.get_ui();
  } else {
    result.target_length = n;
  }
  if (result.target_length < 1) throw std::invalid_argument("extract: target length must be >= 1");

  const CompressibleStream stream = mode_stream(run, T, mode);
  std::vector<BitString> seen;
  if (!stream.entries.empty()) {
    result.alpha_prefix = sum_prefix(run, n, T, mode, prec);
    result.cutoff = find_cutoff(*result.alpha_prefix, T, mode, run, prec);
    for (std::size_t i = 0; i < result.cutoff; ++i) seen.push_back(stream.entries[i].value);
  }
  result.value = least_absent(result.target_length, std::move(seen));
  return result;
}

bool verify_incompressible(const BitString& s, const Temperature& T, const Enumeration& run) {
  const auto h = complexity_upper(run, s);
  return !h || !below_threshold(*h, s.size(), T);
}

}  // namespace omegalab
