#pragma once

// A small deterministic machine over bit strings, used as the reference
// machine for resource-bounded complexity experiments. See docs/machine.md.
//
// Opcodes form a complete prefix code and are decoded on demand:
//
//   1      DUP   out := out . out          cost max(1, |out|)
//   000    OUT0  out := out . 0            cost 1
//   001    OUT1  out := out . 1            cost 1
//   0100   LIT   emit a literal and halt   cost max(1, L)
//   0101   CPY   out := out . y            cost max(1, |y|)
//   0110   FLIP  invert every bit of out   cost max(1, |out|)
//   01110  JMP   jump to the first opcode  cost 1
//   01111  HALT                            cost 1
//
// Plain discipline: the program is a whole string. Running off the end at
// an opcode boundary halts; LIT emits every remaining bit.
// Prefix-free discipline: bits are read on demand and the machine never sees
// the program length. A run is valid only when it halts (HALT or LIT) having
// consumed exactly all program bits. LIT is followed by a self-delimiting
// length L (each bit of L doubled, then "01") and L payload bits.

#include <cstdint>
#include <initializer_list>
#include <string_view>

#include "kgame/bits.hpp"

namespace kgame {

inline constexpr std::string_view kMachineId = "kgame-bitvm";
inline constexpr int kMachineVersion = 1;

enum class Discipline { Plain, PrefixFree };

std::string_view to_string(Discipline d);

enum class Opcode { Dup, Out0, Out1, Lit, Cpy, Flip, Jmp, Halt };

BitString opcode_bits(Opcode op);

// Concatenates opcode encodings. LIT is rejected: use literal_program.
BitString assemble(std::initializer_list<Opcode> ops);

enum class RunStatus { Halted, OutOfBudget, Invalid };

enum class InvalidKind {
  None,
  TruncatedOpcode,  // plain program ends inside an opcode
  ReadPastEnd,      // prefix-free program asks for more bits than it has
  TrailingBits,     // prefix-free program halts before consuming all bits
  BadLengthCode,    // "10" pair inside a self-delimiting length
  LengthOverflow,   // self-delimiting length wider than 32 bits
};

struct RunOutcome {
  RunStatus status = RunStatus::Invalid;
  BitString output;
  uint64_t bits_consumed = 0;
  uint64_t steps = 0;
  InvalidKind invalid = InvalidKind::None;

  bool halted() const { return status == RunStatus::Halted; }
};

// Deterministic in (discipline, program, condition, step_budget).
// step_budget must be >= 1 (std::invalid_argument otherwise).
RunOutcome run_program(Discipline discipline, const BitString& program,
                       const BitString& condition, uint64_t step_budget);

// Program that prints x and halts. Plain length |x| + kPlainLiteralHeader;
// prefix-free length |x| + 2*bit_length(|x|) + kPrefixLiteralHeader.
BitString literal_program(const BitString& x, Discipline discipline);

inline constexpr int kPlainLiteralHeader = 4;
inline constexpr int kPrefixLiteralHeader = 6;

// Steps a literal program needs to halt.
uint64_t literal_steps(const BitString& x);

}  // namespace kgame
