#include "kgame/machine.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

namespace kgame {

namespace {

class BitReader {
 public:
  explicit BitReader(const BitString& bits) : bits_(bits) {}
  bool at_end() const { return pos_ >= bits_.size(); }
  uint64_t consumed() const { return pos_; }
  uint64_t remaining() const { return bits_.size() - pos_; }
  std::optional<bool> read() {
    if (at_end()) return std::nullopt;
    return bits_[pos_++];
  }

 private:
  const BitString& bits_;
  size_t pos_ = 0;
};

// Walks the prefix code one bit at a time.
std::optional<Opcode> decode(BitReader& in) {
  auto b = in.read();
  if (!b) return std::nullopt;
  if (*b) return Opcode::Dup;
  if (!(b = in.read())) return std::nullopt;
  if (!*b) {
    if (!(b = in.read())) return std::nullopt;
    return *b ? Opcode::Out1 : Opcode::Out0;
  }
  if (!(b = in.read())) return std::nullopt;
  if (!*b) {
    if (!(b = in.read())) return std::nullopt;
    return *b ? Opcode::Cpy : Opcode::Lit;
  }
  if (!(b = in.read())) return std::nullopt;
  if (!*b) return Opcode::Flip;
  if (!(b = in.read())) return std::nullopt;
  return *b ? Opcode::Halt : Opcode::Jmp;
}

RunOutcome invalid(InvalidKind kind, const BitReader& in, uint64_t steps) {
  RunOutcome out;
  out.status = RunStatus::Invalid;
  out.invalid = kind;
  out.bits_consumed = in.consumed();
  out.steps = steps;
  return out;
}

}  // namespace

std::string_view to_string(Discipline d) {
  return d == Discipline::Plain ? "plain" : "prefix";
}

BitString opcode_bits(Opcode op) {
  switch (op) {
    case Opcode::Dup: return BitString::parse("1");
    case Opcode::Out0: return BitString::parse("000");
    case Opcode::Out1: return BitString::parse("001");
    case Opcode::Lit: return BitString::parse("0100");
    case Opcode::Cpy: return BitString::parse("0101");
    case Opcode::Flip: return BitString::parse("0110");
    case Opcode::Jmp: return BitString::parse("01110");
    case Opcode::Halt: return BitString::parse("01111");
  }
  throw std::logic_error("unknown opcode");
}

BitString assemble(std::initializer_list<Opcode> ops) {
  BitString out;
  for (Opcode op : ops) {
    if (op == Opcode::Lit) throw std::invalid_argument("assemble: use literal_program for LIT");
    out.append(opcode_bits(op));
  }
  return out;
}

RunOutcome run_program(Discipline discipline, const BitString& program,
                       const BitString& condition, uint64_t step_budget) {
  if (step_budget < 1) throw std::invalid_argument("run_program: step_budget must be >= 1");

  const bool plain = discipline == Discipline::Plain;
  BitReader in(program);
  std::vector<Opcode> code;
  size_t pc = 0;
  uint64_t steps = 0;
  BitString out;

  auto finish = [&](RunOutcome r) {
    if (r.status == RunStatus::Halted && !plain && !in.at_end()) {
      return invalid(InvalidKind::TrailingBits, in, steps);
    }
    return r;
  };
  auto halted = [&] {
    RunOutcome r;
    r.status = RunStatus::Halted;
    r.output = out;
    r.bits_consumed = in.consumed();
    r.steps = steps;
    return finish(std::move(r));
  };
  auto out_of_budget = [&] {
    RunOutcome r;
    r.status = RunStatus::OutOfBudget;
    r.bits_consumed = in.consumed();
    r.steps = steps;
    return r;
  };

  for (;;) {
    if (pc == code.size()) {
      if (in.at_end()) {
        if (plain) return halted();
        return invalid(InvalidKind::ReadPastEnd, in, steps);
      }
      auto op = decode(in);
      if (!op) {
        return invalid(plain ? InvalidKind::TruncatedOpcode : InvalidKind::ReadPastEnd, in, steps);
      }
      code.push_back(*op);
    }

    const Opcode op = code[pc];
    if (op == Opcode::Lit) {
      BitString payload;
      if (plain) {
        while (auto b = in.read()) payload.push_back(*b);
      } else {
        uint64_t length = 0;
        int width = 0;
        for (;;) {
          auto hi = in.read();
          if (!hi) return invalid(InvalidKind::ReadPastEnd, in, steps);
          auto lo = in.read();
          if (!lo) return invalid(InvalidKind::ReadPastEnd, in, steps);
          if (!*hi && *lo) break;  // "01" terminates
          if (*hi != *lo) return invalid(InvalidKind::BadLengthCode, in, steps);
          if (++width > 32) return invalid(InvalidKind::LengthOverflow, in, steps);
          length = (length << 1) | static_cast<uint64_t>(*hi);
        }
        for (uint64_t i = 0; i < length; ++i) {
          auto b = in.read();
          if (!b) return invalid(InvalidKind::ReadPastEnd, in, steps);
          payload.push_back(*b);
        }
      }
      const uint64_t cost = std::max<uint64_t>(1, payload.size());
      if (steps + cost > step_budget) return out_of_budget();
      steps += cost;
      out.append(payload);
      return halted();
    }

    uint64_t cost = 1;
    switch (op) {
      case Opcode::Dup:
      case Opcode::Flip: cost = std::max<uint64_t>(1, out.size()); break;
      case Opcode::Cpy: cost = std::max<uint64_t>(1, condition.size()); break;
      default: break;
    }
    if (steps + cost > step_budget) return out_of_budget();
    steps += cost;

    switch (op) {
      case Opcode::Dup: {
        BitString copy = out;
        out.append(copy);
        break;
      }
      case Opcode::Out0: out.push_back(false); break;
      case Opcode::Out1: out.push_back(true); break;
      case Opcode::Cpy: out.append(condition); break;
      case Opcode::Flip: out.invert(); break;
      case Opcode::Jmp: pc = 0; continue;
      case Opcode::Halt: return halted();
      case Opcode::Lit: break;  // handled above
    }
    ++pc;
  }
}

BitString literal_program(const BitString& x, Discipline discipline) {
  BitString p = opcode_bits(Opcode::Lit);
  if (discipline == Discipline::PrefixFree) {
    BitString len = BitString::from_integer(x.size());
    for (size_t i = 0; i < len.size(); ++i) {
      p.push_back(len[i]);
      p.push_back(len[i]);
    }
    p.append(BitString::parse("01"));
  }
  p.append(x);
  return p;
}

uint64_t literal_steps(const BitString& x) { return std::max<uint64_t>(1, x.size()); }

}  // namespace kgame
