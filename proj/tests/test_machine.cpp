#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "omegalab/machine.hpp"

using namespace omegalab;

namespace {
BitString b(const char* s) { return BitString(s); }
const Machine& u() {
  static const Machine m(default_registry());
  return m;
}
}  // namespace

TEST_CASE("bit strings and the phi numbering") {
  CHECK(BitString::from_natural(std::uint64_t{0}) == BitString());
  CHECK(BitString::from_natural(std::uint64_t{1}) == b("0"));
  CHECK(BitString::from_natural(std::uint64_t{2}) == b("1"));
  CHECK(BitString::from_natural(std::uint64_t{3}) == b("00"));
  CHECK(b("0101").to_natural() == 20);
  for (std::uint64_t n = 0; n < 300; ++n) CHECK(BitString::from_natural(n).to_natural() == n);
  CHECK(b("0") < b("1"));
  CHECK(b("1") < b("00"));
  CHECK(b("011").numeral() == 3);
  CHECK(BitString::from_numeral(3, 5) == b("00011"));
  CHECK_THROWS_AS(BitString("012"), std::invalid_argument);
  CHECK(b("0110").reversed() == b("0110"));
  CHECK(b("01").is_prefix_of(b("011")));
  CHECK_FALSE(b("011").is_prefix_of(b("01")));
}

TEST_CASE("gamma code") {
  CHECK(encode_gamma(1) == b("1"));
  CHECK(encode_gamma(2) == b("010"));
  CHECK(encode_gamma(4) == b("00100"));

  auto g = decode_gamma(b("1"));
  REQUIRE(g);
  CHECK(g->value == 1);
  CHECK(g->consumed == 1);
  g = decode_gamma(b("010"));
  REQUIRE(g);
  CHECK(g->value == 2);
  CHECK(g->consumed == 3);
  g = decode_gamma(b("0010011"));
  REQUIRE(g);
  CHECK(g->value == 4);
  CHECK(g->consumed == 5);
  CHECK_FALSE(decode_gamma(b("00")));
  CHECK_FALSE(decode_gamma(b("001")));

  for (std::uint64_t n = 1; n < 2000; ++n) {
    const BitString code = encode_gamma(n);
    CHECK(code.size() == 2 * floor_log2(n) + 1);
    auto back = decode_gamma(code + b("1"));
    REQUIRE(back);
    CHECK(back->value == n);
    CHECK(back->consumed == code.size());
  }
}

TEST_CASE("hand-decoded runs") {
  auto r = u().run(b("01"), 100);
  CHECK(r.kind == OutcomeKind::Halt);
  CHECK(r.output.empty());
  CHECK(r.consumed == 2);

  r = u().run(b("00101"), 100);
  CHECK(r.kind == OutcomeKind::Halt);
  CHECK(r.output == b("1"));
  CHECK(r.consumed == 5);

  r = u().run(b("0"), 100);
  CHECK(r.kind == OutcomeKind::NeedsMoreInput);

  r = u().run(b("110") + b("00101") + b("0101"), 100);
  CHECK(r.kind == OutcomeKind::Halt);
  CHECK(r.output == BitString::zeros(20));
  CHECK(r.consumed == 12);
}

TEST_CASE("exact consumption separates Halt from HaltedEarly") {
  auto r = u().run(b("011"), 100);
  CHECK(r.kind == OutcomeKind::HaltedEarly);
  CHECK(r.consumed == 2);
  CHECK(r.output.empty());
}

TEST_CASE("square branch doubles the payload") {
  // 10 gamma(3) w with |w| = 2
  auto r = u().run(b("10") + encode_gamma(3) + b("01"), 100);
  CHECK(r.kind == OutcomeKind::Halt);
  CHECK(r.output == b("0101"));
}

TEST_CASE("step accounting: one step per bit read or written") {
  auto r = u().run(b("00101"), 100);
  CHECK(r.steps == 6);
  r = u().run(b("00101"), 5);
  CHECK(r.kind == OutcomeKind::OutOfBudget);
  CHECK(r.steps == 5);
}

TEST_CASE("raw program reaches every string") {
  for (const char* s : {"", "0", "1", "0110", "1111111"}) {
    const BitString p = raw_program(b(s));
    CHECK(p.size() == std::string(s).size() + 2 * floor_log2(std::string(s).size() + 1) + 2);
    auto r = u().run(p, 1000);
    CHECK(r.kind == OutcomeKind::Halt);
    CHECK(r.output == b(s));
  }
}

TEST_CASE("registry") {
  SubmachineRegistry reg;
  reg.register_submachine(1, decoders::zero_square());
  CHECK_THROWS_AS(reg.register_submachine(1, decoders::looping()), std::invalid_argument);
  CHECK_THROWS_AS(reg.register_submachine(0, decoders::looping()), std::invalid_argument);
  CHECK(reg.description() == "1:zero-square");
  CHECK(SubmachineRegistry().description().empty());
  CHECK_THROWS_AS(registry_preset("nonsense"), std::invalid_argument);

  // zero-square: 111 gamma(1) gamma(3) -> 0^9
  auto r = u().run(b("1111") + encode_gamma(3), 100);
  CHECK(r.kind == OutcomeKind::Halt);
  CHECK(r.output == BitString::zeros(9));
  CHECK(submachine_header_length(1) == 4);
}

TEST_CASE("bare registry: a submachine call never halts") {
  const Machine bare(registry_preset("bare"));
  const BitString p = b("1111") + encode_gamma(3);
  for (std::uint64_t budget : {10u, 100u, 10000u}) {
    auto r = bare.run(p, budget);
    CHECK_FALSE(r.halted());
    CHECK(r.kind != OutcomeKind::HaltedEarly);
  }
}

TEST_CASE("registered extra decoders") {
  SubmachineRegistry reg = default_registry();
  reg.register_submachine(2, decoders::reverse_payload());
  reg.register_submachine(3, decoders::looping());
  const Machine m(std::move(reg));
  const BitString head2 = b("111") + encode_gamma(2);
  auto r = m.run(head2 + b("0") + encode_gamma(4) + b("011"), 1000);
  CHECK(r.kind == OutcomeKind::Halt);
  CHECK(r.output == b("110"));
  r = m.run(head2 + b("1"), 1000);
  CHECK_FALSE(r.halted());

  r = m.run(b("111") + encode_gamma(3), 500);
  CHECK(r.kind == OutcomeKind::OutOfBudget);
  CHECK(r.steps == 500);
}

TEST_CASE("identity and digest") {
  CHECK(u().identity() ==
        "U4/0:raw,10:square,110:zero-run,111:registry/exact-consumption/[1:zero-square]");
  CHECK(u().digest().size() == 16);
  CHECK(u().digest() != Machine(registry_preset("bare")).digest());
  CHECK(u().digest() == Machine(default_registry()).digest());
}
