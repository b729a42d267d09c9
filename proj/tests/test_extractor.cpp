#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "omegalab/extractor.hpp"
#include "support.hpp"

using namespace omegalab;
using testing_support::run_at;

namespace {

// Exact reference: every term below is a dyadic for T in {1/2, 1}.
BitString brute_force(std::size_t n, const Temperature& T, SumMode mode, const Enumeration& run) {
  const CompressibleStream stream = compressible_stream(run, mode == SumMode::CS ? Temperature(1) : T);
  const std::size_t m = mode == SumMode::CS ? mpz_class(n * T.num() / T.den()).get_ui() : n;
  const unsigned long scale = mode == SumMode::CS ? T.den().get_ui() : 1;  // T = 1/den here
  std::set<std::string> excluded;
  if (!stream.entries.empty()) {
    std::vector<mpq_class> partial;
    mpq_class total = 0;
    for (const auto& e : stream.entries) {
      mpq_class term(1);
      mpq_div_2exp(term.get_mpq_t(), term.get_mpq_t(), e.value.size() * scale);
      total += term;
      partial.push_back(total);
    }
    mpq_class scaled = total;
    mpq_mul_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), n);
    mpz_class a;
    mpz_cdiv_q(a.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    a -= 1;
    mpq_class alpha(a);
    mpq_div_2exp(alpha.get_mpq_t(), alpha.get_mpq_t(), n);
    std::size_t k = 0;
    while (!(partial[k] > alpha)) ++k;
    for (std::size_t i = 0; i <= k; ++i) excluded.insert(stream.entries[i].value.str());
  }
  for (unsigned long v = 0; v < (1ul << m); ++v) {
    BitString s = BitString::from_numeral(v, m);
    if (!excluded.count(s.str())) return s;
  }
  throw std::logic_error("no absent string");
}

}  // namespace

TEST_CASE("sum modes") {
  CHECK(parse_sum_mode("cs") == SumMode::CS);
  CHECK(parse_sum_mode("csb") == SumMode::CSb);
  CHECK_THROWS_AS(parse_sum_mode("x"), std::invalid_argument);
  CHECK(to_string(SumMode::CSb) == "csb");
}

TEST_CASE("cutoff") {
  const Enumeration& run = run_at(12);
  CHECK(find_cutoff(BitString::zeros(16), 1, SumMode::CS, run, 64) == 1);
  // s_1 = 0^9, and 2^-9 > 2^-10
  CHECK(compressible_stream(run, 1).entries[0].value == BitString::zeros(9));
  CHECK(find_cutoff(BitString("0000000001"), 1, SumMode::CS, run, 64) == 1);
  CHECK_THROWS_AS(find_cutoff(BitString("1111"), 1, SumMode::CS, run, 64), NoCutoff);
}

TEST_CASE("sum prefix uses the expansion with infinitely many ones") {
  // Omega-free check on a sum that is exactly 2^-9 + ... : the prefix is
  // strictly below the sum even when the sum is dyadic.
  const Enumeration& run = run_at(7);  // stream = {0^9}
  REQUIRE(compressible_stream(run, 1).size() == 1);
  CHECK(sum_prefix(run, 9, 1, SumMode::CS, 64) == BitString("000000000"));
  CHECK(sum_prefix(run, 12, 1, SumMode::CS, 64) == BitString("000000000111"));
  CHECK_THROWS_AS(sum_prefix(run_at(2), 4, 1, SumMode::CS, 64), std::domain_error);
}

TEST_CASE("least absent") {
  CHECK(least_absent(3, {}) == BitString("000"));
  CHECK(least_absent(2, {BitString("00"), BitString("01"), BitString("11")}) == BitString("10"));
  CHECK_THROWS_AS(least_absent(1, {BitString("0"), BitString("1")}), std::domain_error);
}

TEST_CASE("empty census gives the zero string") {
  const Extraction x = extract_incompressible_traced(6, 1, SumMode::CS, run_at(2), 64);
  CHECK(x.value == BitString::zeros(6));
  CHECK_FALSE(x.alpha_prefix);
}

TEST_CASE("extraction matches the brute-force oracle") {
  for (std::size_t L : {12u, 14u}) {
    const Enumeration& run = run_at(L);
    for (std::size_t n = 2; n <= 24; ++n) {
      CHECK(extract_incompressible(n, Temperature(1, 2), SumMode::CS, run, 64) ==
            brute_force(n, Temperature(1, 2), SumMode::CS, run));
    }
    for (std::size_t n = 1; n <= 16; ++n) {
      CHECK(extract_incompressible(n, 1, SumMode::CS, run, 64) == brute_force(n, 1, SumMode::CS, run));
      CHECK(extract_incompressible(n, 1, SumMode::CSb, run, 64) == brute_force(n, 1, SumMode::CSb, run));
    }
  }
}

TEST_CASE("n=24, T=1/2 at L=14") {
  const Extraction x = extract_incompressible_traced(24, Temperature(1, 2), SumMode::CS, run_at(14), 64);
  CHECK(x.target_length == 12);
  CHECK(x.value == BitString("000000000001"));
  CHECK(x.alpha_prefix == BitString("000000000000000001000001"));
  CHECK(x.cutoff == 6);
  CHECK_FALSE(x.advisory);
  CHECK(verify_incompressible(x.value, 1, run_at(14)));
}

TEST_CASE("verification") {
  CHECK_FALSE(verify_incompressible(BitString::zeros(20), 1, run_at(12)));
  CHECK(verify_incompressible(BitString("0110"), 1, run_at(1)));
  CHECK_THROWS_AS(extract_incompressible(8, 2, SumMode::CS, run_at(12), 64), std::invalid_argument);
  CHECK_THROWS_AS(extract_incompressible(1, Temperature(1, 2), SumMode::CS, run_at(12), 64),
                  std::invalid_argument);
}
