#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "omegalab/bitstring.hpp"
#include "omegalab/dyadic.hpp"
#include "omegalab/machine.hpp"

namespace omegalab {

/// Enumeration limits. Round r = 1..rounds runs every program of length
/// <= min(r, max_len) for 2^r steps; max_len fixes the truncated machine U_L.
struct Budget {
  std::size_t max_len = 0;
  std::size_t rounds = 0;

  /// rounds = max_len + 4, which decides every program of the default machine.
  static Budget for_length(std::size_t max_len) { return {max_len, max_len + 4}; }

  friend bool operator==(const Budget&, const Budget&) = default;
};

struct HaltEvent {
  BitString program;
  BitString output;
  std::uint64_t steps = 0;
  std::size_t round = 0;
  std::size_t seq = 0;
};

/// Canonical event order: (round, |program|, program).
bool canonical_before(const HaltEvent& a, const HaltEvent& b) noexcept;

class ComplexityTable {
 public:
  struct Entry {
    std::size_t h_upper;  // length of the shortest discovered program
    BitString witness;    // earliest such program in canonical order
  };

  /// Feed events in canonical order.
  void observe(const HaltEvent& event);

  const Entry* find(const BitString& s) const;
  std::size_t size() const noexcept { return entries_.size(); }
  const std::unordered_map<BitString, Entry>& entries() const noexcept { return entries_; }

 private:
  std::unordered_map<BitString, Entry> entries_;
};

struct StreamEntry {
  BitString value;
  BitString witness;        // the first program with |p| < T|s|
  std::size_t event_seq;    // seq of the event that admitted value
};

/// s_1, s_2, ... : distinct outputs with H^(s) < T|s|, in order of first
/// qualifying witness.
struct CompressibleStream {
  Temperature T{1};
  std::vector<StreamEntry> entries;

  std::size_t size() const noexcept { return entries.size(); }
  bool contains(const BitString& s) const { return members_.count(s) != 0; }

  void push(StreamEntry entry);

 private:
  std::unordered_set<BitString> members_;
};

/// |p| < T|s|, compared as |p| * den < |s| * num.
bool below_threshold(std::size_t program_length, std::size_t string_length, const Temperature& T);

/// A completed (or replayed) enumeration under one Budget.
class Enumeration {
 public:
  Enumeration(std::string machine_identity, std::string machine_digest, Budget budget,
              std::vector<HaltEvent> events, std::size_t out_of_budget, std::size_t programs_run);

  const Budget& budget() const noexcept { return budget_; }
  const std::string& machine_identity() const noexcept { return identity_; }
  const std::string& machine_digest() const noexcept { return digest_; }
  const std::vector<HaltEvent>& events() const noexcept { return events_; }
  const ComplexityTable& table() const noexcept { return table_; }

  std::size_t out_of_budget() const noexcept { return out_of_budget_; }
  std::size_t programs_run() const noexcept { return programs_run_; }

  /// True iff every program of length <= L was decided. Only then are the
  /// derived sums exact statements about U_L rather than lower bounds.
  bool exhaustive() const noexcept { return out_of_budget_ == 0; }

 private:
  std::string identity_;
  std::string digest_;
  Budget budget_;
  std::vector<HaltEvent> events_;
  std::size_t out_of_budget_;
  std::size_t programs_run_;
  ComplexityTable table_;
};

/// Dovetailed enumeration of Dom U under budget. Output is independent of
/// workers; programs are split across threads and merged in canonical order.
Enumeration enumerate(const Machine& machine, const Budget& budget, unsigned workers = 1);

std::optional<std::size_t> complexity_upper(const Enumeration& run, const BitString& s);

CompressibleStream compressible_stream(const Enumeration& run, const Temperature& T);

inline bool is_exhaustive(const Enumeration& run) { return run.exhaustive(); }

/// The halting programs with one of them a proper prefix of another, if any.
std::optional<std::pair<BitString, BitString>> find_prefix_pair(const std::vector<HaltEvent>& events);

}  // namespace omegalab
