#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "omegalab/bitstring.hpp"

namespace omegalab {

enum class OutcomeKind {
  Halt,            // finished having consumed exactly the whole input
  NeedsMoreInput,  // asked for a bit past the end of the input
  HaltedEarly,     // finished with input left over
  OutOfBudget,     // step budget ran out; says nothing about divergence
};

std::string_view to_string(OutcomeKind kind) noexcept;

struct MachineOutcome {
  OutcomeKind kind = OutcomeKind::OutOfBudget;
  BitString output;           // meaningful for Halt and HaltedEarly
  std::size_t consumed = 0;   // input bits read
  std::uint64_t steps = 0;    // steps spent, whatever the outcome

  bool halted() const noexcept { return kind == OutcomeKind::Halt; }
  bool decided() const noexcept { return kind != OutcomeKind::OutOfBudget; }
};

/// Input/output head shared by the branch decoders.
///
/// Every bit read and every bit written costs one step. A read past the end
/// of the input or a step beyond the budget stops the run; the decoder then
/// returns false and the tape records which of the two happened.
class Tape {
 public:
  enum class Stop { None, NeedsMoreInput, OutOfBudget };

  Tape(const BitString& input, std::uint64_t step_budget) noexcept
      : input_(input), budget_(step_budget) {}

  std::optional<bool> read();
  bool write(bool bit);
  /// Spend one step without touching input or output.
  bool tick();

  /// Reads an Elias gamma codeword. Values too large for 64 bits never
  /// terminate: the decoder keeps reading.
  std::optional<std::uint64_t> read_gamma();
  /// Reads exactly count payload bits.
  std::optional<BitString> read_bits(std::uint64_t count);

  Stop stop() const noexcept { return stop_; }
  std::size_t consumed() const noexcept { return pos_; }
  std::uint64_t steps() const noexcept { return steps_; }
  const BitString& output() const noexcept { return output_; }
  BitString take_output() noexcept { return std::move(output_); }

 private:
  bool spend();

  const BitString& input_;
  std::uint64_t budget_;
  std::uint64_t steps_ = 0;
  std::size_t pos_ = 0;
  BitString output_;
  Stop stop_ = Stop::None;
};

/// A submachine reachable through the "111" branch. decode returns true when
/// the submachine finished normally; its output is whatever it wrote.
struct NamedDecoder {
  std::string name;
  std::function<bool(Tape&)> decode;
};

namespace decoders {
/// gamma(n) -> 0^(n*n).
NamedDecoder zero_square();
/// '0' gamma(n) w with |w| = n-1 -> reverse(w); a leading '1' never halts.
NamedDecoder reverse_payload();
/// Spins forever without reading.
NamedDecoder looping();
}  // namespace decoders

class SubmachineRegistry {
 public:
  /// Throws std::invalid_argument on index 0 or a duplicate index.
  SubmachineRegistry& register_submachine(std::uint64_t index, NamedDecoder decoder);

  const NamedDecoder* find(std::uint64_t index) const noexcept;
  std::size_t size() const noexcept { return entries_.size(); }

  /// "1:zero-square,2:reverse-payload"; empty for the bare registry.
  std::string description() const;

 private:
  std::map<std::uint64_t, NamedDecoder> entries_;
};

/// Registry used by the CLI unless --registry bare is given.
SubmachineRegistry default_registry();
/// Resolve a registry preset name ("default" or "bare").
SubmachineRegistry registry_preset(std::string_view name);

/// The four-branch prefix-free machine U.
///
///   0   gamma(n) w, |w| = n-1   -> w
///   10  gamma(n) w, |w| = n-1   -> ww
///   110 gamma(n) w, |w| = n-1   -> 0^phi(w)
///   111 gamma(e) rest           -> submachine e on rest
///
/// An unregistered index reads input forever. Only runs that finish with the
/// whole input consumed halt, so the halting set is prefix-free.
class Machine {
 public:
  explicit Machine(SubmachineRegistry registry = {});

  MachineOutcome run(const BitString& program, std::uint64_t step_budget) const;

  const SubmachineRegistry& registry() const noexcept { return registry_; }
  /// Branch table plus registry description.
  const std::string& identity() const noexcept { return identity_; }
  /// 16 hex digits of FNV-1a over identity().
  const std::string& digest() const noexcept { return digest_; }

 private:
  SubmachineRegistry registry_;
  std::string identity_;
  std::string digest_;
};

struct GammaCode {
  std::uint64_t value;
  std::size_t consumed;
};

/// Decode a gamma codeword at the start of bits; nullopt when incomplete.
std::optional<GammaCode> decode_gamma(const BitString& bits);

/// Length of the header "111" gamma(index) that routes to submachine index.
std::size_t submachine_header_length(std::uint64_t index);

/// Program "0" gamma(|s|+1) s, which outputs s through the raw branch.
BitString raw_program(const BitString& s);

}  // namespace omegalab
