#include "omegalab/machine.hpp"

#include <cstdio>
#include <limits>
#include <stdexcept>

namespace omegalab {

std::string_view to_string(OutcomeKind kind) noexcept {
  switch (kind) {
    case OutcomeKind::Halt: return "halt";
    case OutcomeKind::NeedsMoreInput: return "needs-more-input";
    case OutcomeKind::HaltedEarly: return "halted-early";
    case OutcomeKind::OutOfBudget: return "out-of-budget";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Tape

bool Tape::spend() {
  if (stop_ != Stop::None) return false;
  if (steps_ >= budget_) {
    stop_ = Stop::OutOfBudget;
    return false;
  }
  ++steps_;
  return true;
}

std::optional<bool> Tape::read() {
  if (!spend()) return std::nullopt;
  if (pos_ >= input_.size()) {
    stop_ = Stop::NeedsMoreInput;
    return std::nullopt;
  }
  return input_[pos_++];
}

bool Tape::write(bool bit) {
  if (!spend()) return false;
  output_.push_back(bit);
  return true;
}

bool Tape::tick() { return spend(); }

std::optional<std::uint64_t> Tape::read_gamma() {
  std::size_t zeros = 0;
  for (;;) {
    auto bit = read();
    if (!bit) return std::nullopt;
    if (*bit) break;
    ++zeros;
  }
  if (zeros >= 64) {
    // Not representable; keep consuming so the run never halts.
    while (read()) {
    }
    return std::nullopt;
  }
  std::uint64_t value = 1;
  for (std::size_t i = 0; i < zeros; ++i) {
    auto bit = read();
    if (!bit) return std::nullopt;
    value = (value << 1) | (*bit ? 1u : 0u);
  }
  return value;
}

std::optional<BitString> Tape::read_bits(std::uint64_t count) {
  BitString bits;
  for (std::uint64_t i = 0; i < count; ++i) {
    auto bit = read();
    if (!bit) return std::nullopt;
    bits.push_back(*bit);
  }
  return bits;
}

// ---------------------------------------------------------------------------
// Branch decoders

namespace {

std::optional<BitString> read_payload(Tape& tape) {
  auto n = tape.read_gamma();
  if (!n) return std::nullopt;
  return tape.read_bits(*n - 1);
}

bool write_all(Tape& tape, const BitString& bits) {
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (!tape.write(bits[i])) return false;
  }
  return true;
}

bool write_zeros(Tape& tape, std::uint64_t count) {
  for (std::uint64_t i = 0; i < count; ++i) {
    if (!tape.write(false)) return false;
  }
  return true;
}

bool raw_branch(Tape& tape) {
  auto w = read_payload(tape);
  return w && write_all(tape, *w);
}

bool square_branch(Tape& tape) {
  auto w = read_payload(tape);
  return w && write_all(tape, *w) && write_all(tape, *w);
}

bool zero_run_branch(Tape& tape) {
  auto w = read_payload(tape);
  if (!w) return false;
  mpz_class count = w->to_natural();
  // Runs longer than 2^64 bits cannot finish inside any representable budget.
  if (!count.fits_ulong_p()) {
    while (tape.tick()) {
    }
    return false;
  }
  return write_zeros(tape, count.get_ui());
}

bool read_forever(Tape& tape) {
  while (tape.read()) {
  }
  return false;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace

namespace decoders {

NamedDecoder zero_square() {
  return {"zero-square", [](Tape& tape) {
            auto n = tape.read_gamma();
            if (!n) return false;
            std::uint64_t count = std::numeric_limits<std::uint64_t>::max();
            if (*n <= 0xffffffffull) count = *n * *n;
            return write_zeros(tape, count);
          }};
}

NamedDecoder reverse_payload() {
  return {"reverse-payload", [](Tape& tape) {
            auto tag = tape.read();
            if (!tag) return false;
            if (*tag) return read_forever(tape);
            auto w = read_payload(tape);
            return w && write_all(tape, w->reversed());
          }};
}

NamedDecoder looping() {
  return {"looping", [](Tape& tape) {
            while (tape.tick()) {
            }
            return false;
          }};
}

}  // namespace decoders

// ---------------------------------------------------------------------------
// Registry

SubmachineRegistry& SubmachineRegistry::register_submachine(std::uint64_t index,
                                                            NamedDecoder decoder) {
  if (index == 0) throw std::invalid_argument("register_submachine: index must be positive");
  if (!decoder.decode) throw std::invalid_argument("register_submachine: empty decoder");
  if (!entries_.emplace(index, std::move(decoder)).second) {
    throw std::invalid_argument("register_submachine: index " + std::to_string(index) +
                                " already registered");
  }
  return *this;
}

const NamedDecoder* SubmachineRegistry::find(std::uint64_t index) const noexcept {
  auto it = entries_.find(index);
  return it == entries_.end() ? nullptr : &it->second;
}

std::string SubmachineRegistry::description() const {
  std::string out;
  for (const auto& [index, decoder] : entries_) {
    if (!out.empty()) out += ',';
    out += std::to_string(index) + ':' + decoder.name;
  }
  return out;
}

SubmachineRegistry default_registry() {
  SubmachineRegistry registry;
  registry.register_submachine(1, decoders::zero_square());
  return registry;
}

SubmachineRegistry registry_preset(std::string_view name) {
  if (name == "default") return default_registry();
  if (name == "bare") return {};
  throw std::invalid_argument("unknown registry preset \"" + std::string(name) + "\"");
}

// ---------------------------------------------------------------------------
// Machine

Machine::Machine(SubmachineRegistry registry) : registry_(std::move(registry)) {
  identity_ = "U4/0:raw,10:square,110:zero-run,111:registry/exact-consumption/[" +
              registry_.description() + "]";
  digest_ = fnv1a_hex(identity_);
}

MachineOutcome Machine::run(const BitString& program, std::uint64_t step_budget) const {
  Tape tape(program, step_budget);

  auto dispatch = [&]() -> bool {
    auto b0 = tape.read();
    if (!b0) return false;
    if (!*b0) return raw_branch(tape);
    auto b1 = tape.read();
    if (!b1) return false;
    if (!*b1) return square_branch(tape);
    auto b2 = tape.read();
    if (!b2) return false;
    if (!*b2) return zero_run_branch(tape);
    auto index = tape.read_gamma();
    if (!index) return false;
    if (const NamedDecoder* sub = registry_.find(*index)) return sub->decode(tape);
    return read_forever(tape);
  };

  MachineOutcome outcome;
  const bool finished = dispatch();
  outcome.consumed = tape.consumed();
  outcome.steps = tape.steps();
  if (finished) {
    outcome.kind = tape.consumed() == program.size() ? OutcomeKind::Halt : OutcomeKind::HaltedEarly;
    outcome.output = tape.take_output();
  } else {
    outcome.kind = tape.stop() == Tape::Stop::NeedsMoreInput ? OutcomeKind::NeedsMoreInput
                                                             : OutcomeKind::OutOfBudget;
  }
  return outcome;
}

// ---------------------------------------------------------------------------

std::optional<GammaCode> decode_gamma(const BitString& bits) {
  Tape tape(bits, std::numeric_limits<std::uint64_t>::max());
  auto value = tape.read_gamma();
  if (!value) return std::nullopt;
  return GammaCode{*value, tape.consumed()};
}

std::size_t submachine_header_length(std::uint64_t index) {
  return 3 + encode_gamma(index).size();
}

BitString raw_program(const BitString& s) {
  return BitString("0") + encode_gamma(s.size() + 1) + s;
}

}  // namespace omegalab
