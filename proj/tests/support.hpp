#pragma once

#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "omegalab/enumerator.hpp"

namespace testing_support {

using namespace omegalab;

// Exhaustive enumerations are cheap but reused across many cases.
inline const Enumeration& run_at(std::size_t L, const std::string& preset = "default") {
  static std::map<std::pair<std::size_t, std::string>, Enumeration> cache;
  static std::mutex mu;
  std::lock_guard lock(mu);
  auto key = std::make_pair(L, preset);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, enumerate(Machine(registry_preset(preset)), Budget::for_length(L))).first;
  }
  return it->second;
}

inline BitString bits(const char* s) { return BitString(s); }

inline mpq_class over_pow2(const char* numerator, unsigned long k) {
  mpq_class q{mpz_class(numerator)};
  mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), k);
  return q;
}

// Frozen events of the reference decoder at L=14: "round program output steps",
// with "-" for the empty output.
struct OracleEvent {
  std::size_t round;
  std::string program;
  std::string output;
  std::uint64_t steps;
};

inline std::vector<OracleEvent> oracle_events_l14() {
  std::ifstream in(OMEGALAB_TEST_DATA "/u14_events.txt");
  std::vector<OracleEvent> out;
  OracleEvent e;
  while (in >> e.round >> e.program >> e.output >> e.steps) {
    if (e.output == "-") e.output.clear();
    out.push_back(e);
  }
  return out;
}

}  // namespace testing_support
