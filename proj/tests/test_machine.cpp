#include <gtest/gtest.h>

#include "kgame/machine.hpp"
#include "kgame/rational.hpp"
#include "oracles.hpp"

namespace kgame {
namespace {

BitString bits(const char* s) { return BitString::parse(s); }

TEST(Machine, LiteralPrintsUnderBothDisciplines) {
  for (Discipline d : {Discipline::Plain, Discipline::PrefixFree}) {
    for (const char* x : {"", "0", "0110", "11111111", "1010010111"}) {
      RunOutcome r = run_program(d, literal_program(bits(x), d), BitString(), 1000);
      ASSERT_TRUE(r.halted()) << x;
      EXPECT_EQ(r.output, bits(x));
      EXPECT_EQ(r.steps, literal_steps(bits(x)));
    }
  }
}

TEST(Machine, PinnedHeaderConstants) {
  EXPECT_EQ(literal_program(BitString(), Discipline::Plain).size(),
            static_cast<size_t>(kPlainLiteralHeader));
  EXPECT_EQ(kPlainLiteralHeader, 4);
  EXPECT_EQ(kPrefixLiteralHeader, 6);
  const BitString x8 = bits("01100101");
  EXPECT_EQ(literal_program(x8, Discipline::Plain).size(), 8u + 4u);
  // 8 + 2 * bit_length(8) + h' = 8 + 8 + 6.
  EXPECT_EQ(literal_program(x8, Discipline::PrefixFree).size(), 22u);
}

TEST(Machine, StepBudgetMustBePositive) {
  EXPECT_THROW(run_program(Discipline::Plain, bits("1"), BitString(), 0), std::invalid_argument);
}

TEST(Machine, CanonicalLoopRunsOutOfBudget) {
  const BitString loop = assemble({Opcode::Out1, Opcode::Jmp});
  EXPECT_EQ(loop.str(), "00101110");
  RunOutcome r = run_program(Discipline::Plain, loop, BitString(), 10000);
  EXPECT_EQ(r.status, RunStatus::OutOfBudget);
  EXPECT_LE(r.steps, 10000u);
  EXPECT_THROW(assemble({Opcode::Lit}), std::invalid_argument);
}

TEST(Machine, OpcodeSemantics) {
  // OUT1 DUP DUP FLIP HALT -> 1 -> 11 -> 1111 -> 0000
  const BitString p = assemble({Opcode::Out1, Opcode::Dup, Opcode::Dup, Opcode::Flip, Opcode::Halt});
  RunOutcome r = run_program(Discipline::PrefixFree, p, BitString(), 100);
  ASSERT_TRUE(r.halted());
  EXPECT_EQ(r.output.str(), "0000");
  EXPECT_EQ(r.steps, 1u + 1u + 2u + 4u + 1u);
  // CPY reads the condition.
  r = run_program(Discipline::Plain, assemble({Opcode::Cpy, Opcode::Cpy}), bits("101"), 100);
  ASSERT_TRUE(r.halted());
  EXPECT_EQ(r.output.str(), "101101");
}

TEST(Machine, DisciplinesDisagreeAtTheEnd) {
  // Plain halts at the end of an opcode boundary; prefix-free must see HALT.
  const BitString p = assemble({Opcode::Out0});
  EXPECT_TRUE(run_program(Discipline::Plain, p, BitString(), 10).halted());
  RunOutcome r = run_program(Discipline::PrefixFree, p, BitString(), 10);
  EXPECT_EQ(r.status, RunStatus::Invalid);
  EXPECT_EQ(r.invalid, InvalidKind::ReadPastEnd);
  // Trailing bits after HALT.
  BitString q = assemble({Opcode::Halt});
  q.push_back(true);
  r = run_program(Discipline::PrefixFree, q, BitString(), 10);
  EXPECT_EQ(r.invalid, InvalidKind::TrailingBits);
  EXPECT_TRUE(run_program(Discipline::Plain, q, BitString(), 10).halted());
  // Truncated opcode.
  r = run_program(Discipline::Plain, bits("01"), BitString(), 10);
  EXPECT_EQ(r.invalid, InvalidKind::TruncatedOpcode);
}

// Every program up to 12 bits against the reference interpreter.
TEST(Machine, AgreesWithReferenceInterpreter) {
  for (const char* y : {"", "1", "0110"}) {
    for (int len = 0; len <= 12; ++len) {
      for (const BitString& p : all_strings(len)) {
        for (bool prefix : {false, true}) {
          for (uint64_t budget : {1u, 5u, 64u}) {
            RunOutcome r = run_program(prefix ? Discipline::PrefixFree : Discipline::Plain, p,
                                       bits(y), budget);
            oracle::Run o = oracle::run(prefix, p.str(), y, budget);
            const auto status = r.status == RunStatus::Halted        ? oracle::Status::Halted
                                : r.status == RunStatus::OutOfBudget ? oracle::Status::OutOfBudget
                                                                     : oracle::Status::Invalid;
            ASSERT_EQ(status, o.status) << p.str() << " y=" << y << " budget=" << budget;
            if (o.status == oracle::Status::Halted) {
              ASSERT_EQ(r.output.str(), o.output) << p.str();
              ASSERT_EQ(r.steps, o.steps) << p.str();
              if (prefix) { ASSERT_EQ(r.bits_consumed, p.size()); }
            }
          }
        }
      }
    }
  }
}

// No halting prefix-free program is a proper prefix of another, so the
// halting set obeys Kraft's inequality.
TEST(Machine, PrefixFreeHaltingSetIsPrefixFree) {
  std::set<std::string> halting;
  Rational kraft = 0;
  for (int len = 0; len <= 14; ++len) {
    for (const BitString& p : all_strings(len)) {
      if (run_program(Discipline::PrefixFree, p, BitString(), 64).halted()) {
        halting.insert(p.str());
        kraft += pow2_neg(len);
      }
    }
  }
  ASSERT_FALSE(halting.empty());
  for (const auto& p : halting) {
    for (size_t k = 0; k < p.size(); ++k) EXPECT_FALSE(halting.contains(p.substr(0, k))) << p;
  }
  EXPECT_LE(kraft, 1);
}

TEST(Machine, Deterministic) {
  const BitString p = bits("00110001");
  RunOutcome a = run_program(Discipline::Plain, p, bits("11"), 50);
  RunOutcome b = run_program(Discipline::Plain, p, bits("11"), 50);
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.output, b.output);
  EXPECT_EQ(a.steps, b.steps);
}

}  // namespace
}  // namespace kgame
