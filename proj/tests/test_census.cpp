#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "omegalab/census.hpp"
#include "support.hpp"

using namespace omegalab;
using testing_support::run_at;

TEST_CASE("census rows") {
  CHECK(census(run_at(12), 0, 1).count == 0);
  const CensusRow row = census(run_at(12), 20, 1);
  CHECK(std::find(row.members.begin(), row.members.end(), BitString::zeros(20)) != row.members.end());
  CHECK(row.count == row.members.size());
  CHECK(std::is_sorted(row.members.begin(), row.members.end()));
  CHECK(row.h_up_n == complexity_upper(run_at(12), BitString::from_natural(std::uint64_t{20})));
}

TEST_CASE("census members all sit below the threshold") {
  for (std::size_t n = 0; n <= 40; ++n) {
    for (const auto& s : census(run_at(14), n, Temperature(2, 3)).members) {
      CHECK(s.size() == n);
      CHECK(below_threshold(*complexity_upper(run_at(14), s), n, Temperature(2, 3)));
    }
  }
}

TEST_CASE("profile") {
  const auto rows = census_profile(run_at(14), 64);
  REQUIRE(rows.size() == 65);
  std::size_t total = 0;
  for (const auto& r : rows) {
    total += r.count;
    CHECK(r.gap.has_value() == (r.count > 0));
  }
  // Only strings of length <= 64 are counted in the profile.
  std::size_t short_entries = 0;
  for (const auto& e : compressible_stream(run_at(14), 1).entries) short_entries += e.value.size() <= 64;
  CHECK(total == short_entries);
  CHECK(rows[9].count == 1);
  CHECK(rows[9].gap == doctest::Approx(9.0));
}

TEST_CASE("profile csv") {
  const std::string csv = profile_csv(census_profile(run_at(12), 3));
  CHECK(csv ==
        "n,count,two_pow_n,gap,h_upper_n\n"
        "0,0,1,null,2\n"
        "1,0,2,null,5\n"
        "2,0,4,null,5\n"
        "3,0,8,null,6\n");
}
