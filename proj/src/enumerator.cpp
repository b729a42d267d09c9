#include "omegalab/enumerator.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace omegalab {

bool canonical_before(const HaltEvent& a, const HaltEvent& b) noexcept {
  if (a.round != b.round) return a.round < b.round;
  return a.program < b.program;  // BitString order is length, then lexicographic
}

void ComplexityTable::observe(const HaltEvent& event) {
  auto [it, inserted] = entries_.try_emplace(event.output, Entry{event.program.size(), event.program});
  if (!inserted && event.program.size() < it->second.h_upper) {
    it->second = Entry{event.program.size(), event.program};
  }
}

const ComplexityTable::Entry* ComplexityTable::find(const BitString& s) const {
  auto it = entries_.find(s);
  return it == entries_.end() ? nullptr : &it->second;
}

void CompressibleStream::push(StreamEntry entry) {
  if (members_.insert(entry.value).second) entries.push_back(std::move(entry));
}

bool below_threshold(std::size_t program_length, std::size_t string_length, const Temperature& T) {
  return mpz_class(program_length) * T.den() < mpz_class(string_length) * T.num();
}

Enumeration::Enumeration(std::string machine_identity, std::string machine_digest, Budget budget,
                         std::vector<HaltEvent> events, std::size_t out_of_budget,
                         std::size_t programs_run)
    : identity_(std::move(machine_identity)),
      digest_(std::move(machine_digest)),
      budget_(budget),
      events_(std::move(events)),
      out_of_budget_(out_of_budget),
      programs_run_(programs_run) {
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if (i > 0 && !canonical_before(events_[i - 1], events_[i])) {
      throw std::invalid_argument("Enumeration: events not in canonical order");
    }
    if (events_[i].seq != i) throw std::invalid_argument("Enumeration: seq does not match position");
    table_.observe(events_[i]);
  }
}

namespace {

struct WorkerResult {
  std::vector<HaltEvent> events;
  std::size_t out_of_budget = 0;
  std::size_t programs = 0;
};

constexpr std::size_t kMaxRounds = 62;

// Recompute-from-scratch dovetailing for one program: the first round whose
// allotment decides it is the round it belongs to.
void schedule_program(const Machine& machine, const Budget& budget, const BitString& program,
                      WorkerResult& out) {
  ++out.programs;
  for (std::size_t r = std::max<std::size_t>(1, program.size()); r <= budget.rounds; ++r) {
    MachineOutcome outcome = machine.run(program, std::uint64_t{1} << r);
    if (!outcome.decided()) continue;
    if (outcome.halted()) {
      out.events.push_back(HaltEvent{program, std::move(outcome.output), outcome.steps, r, 0});
    }
    return;
  }
  ++out.out_of_budget;
}

}  // namespace

Enumeration enumerate(const Machine& machine, const Budget& budget, unsigned workers) {
  if (budget.rounds > kMaxRounds) throw std::invalid_argument("enumerate: at most 62 rounds");
  if (budget.max_len > 40) throw std::invalid_argument("enumerate: max_len above 40 is not supported");
  workers = std::max(1u, workers);

  // Program index i <-> (length, value) in length-then-lexicographic order.
  const std::uint64_t total = budget.max_len == 0 ? 0 : (std::uint64_t{2} << budget.max_len) - 2;
  auto program_at = [](std::uint64_t index) {
    std::size_t len = 1;
    while (index >= (std::uint64_t{1} << len)) {
      index -= std::uint64_t{1} << len;
      ++len;
    }
    return BitString::from_numeral(mpz_class(index), len);
  };

  std::vector<WorkerResult> results(workers);
  auto work = [&](unsigned w) {
    for (std::uint64_t i = w; i < total; i += workers) {
      schedule_program(machine, budget, program_at(i), results[w]);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
  }

  std::vector<HaltEvent> events;
  std::size_t out_of_budget = 0;
  std::size_t programs = 0;
  for (auto& r : results) {
    out_of_budget += r.out_of_budget;
    programs += r.programs;
    std::move(r.events.begin(), r.events.end(), std::back_inserter(events));
  }
  std::sort(events.begin(), events.end(), canonical_before);
  for (std::size_t i = 0; i < events.size(); ++i) events[i].seq = i;

  return Enumeration(machine.identity(), machine.digest(), budget, std::move(events), out_of_budget,
                     programs);
}

std::optional<std::size_t> complexity_upper(const Enumeration& run, const BitString& s) {
  if (const auto* entry = run.table().find(s)) return entry->h_upper;
  return std::nullopt;
}

CompressibleStream compressible_stream(const Enumeration& run, const Temperature& T) {
  CompressibleStream stream;
  stream.T = T;
  for (const HaltEvent& event : run.events()) {
    if (stream.contains(event.output)) continue;
    if (below_threshold(event.program.size(), event.output.size(), T)) {
      stream.push(StreamEntry{event.output, event.program, event.seq});
    }
  }
  return stream;
}

std::optional<std::pair<BitString, BitString>> find_prefix_pair(const std::vector<HaltEvent>& events) {
  std::vector<const std::string*> programs;
  programs.reserve(events.size());
  for (const auto& e : events) programs.push_back(&e.program.str());
  std::sort(programs.begin(), programs.end(),
            [](const std::string* a, const std::string* b) { return *a < *b; });
  // In lexicographic order a prefix sorts directly before some extension of it.
  for (std::size_t i = 1; i < programs.size(); ++i) {
    const std::string& a = *programs[i - 1];
    const std::string& b = *programs[i];
    if (a.size() < b.size() && b.compare(0, a.size(), a) == 0) {
      return std::make_pair(BitString(a), BitString(b));
    }
  }
  return std::nullopt;
}

}  // namespace omegalab
