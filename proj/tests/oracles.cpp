#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <string_view>
#include <tuple>

namespace oracle {

uint64_t Board::white_in_row(int row) const {
  return static_cast<uint64_t>(
      std::count_if(white.begin(), white.end(), [&](const Cell& c) { return c.row == row; }));
}

uint64_t Board::black_in_row(int row) const {
  return static_cast<uint64_t>(
      std::count_if(black.begin(), black.end(), [&](const Cell& c) { return c.row == row; }));
}

int Board::blackened_in_column(uint64_t column) const {
  return static_cast<int>(std::count_if(blackened.begin(), blackened.end(),
                                        [&](const Cell& c) { return c.column == column; }));
}

bool Board::black_below(Cell c) const {
  return std::any_of(black.begin(), black.end(),
                     [&](const Cell& b) { return b.column == c.column && b.row < c.row; });
}

std::vector<Cell> Board::alive() const {
  std::vector<Cell> out;
  for (const Cell& w : white) {
    if (!dead(w)) out.push_back(w);
  }
  return out;
}

bool legal(const Board& b, const Action& a) {
  if (a.kind == Act::Pass) return true;
  const Cell c = a.cell;
  if (c.row < 0 || c.row >= b.n || c.column >= b.columns()) return false;
  const uint64_t budget = uint64_t{1} << c.row;
  switch (a.kind) {
    case Act::White: return !b.white.contains(c) && b.white_in_row(c.row) < budget;
    case Act::Black: return !b.black.contains(c) && b.black_in_row(c.row) < budget;
    case Act::Blacken:
      return !b.blackened.contains(c) && b.blackened_in_column(c.column) < b.n / 2;
    case Act::Pass: break;
  }
  return true;
}

void play(Board& b, const Action& a) {
  switch (a.kind) {
    case Act::White: b.white.insert(a.cell); break;
    case Act::Black: b.black.insert(a.cell); break;
    case Act::Blacken: b.blackened.insert(a.cell); break;
    case Act::Pass: break;
  }
}

namespace {

std::optional<int> open_cell_below(const Board& b, uint64_t column, int below) {
  for (int r = below - 1; r >= 0; --r) {
    if (!b.blackened.contains(Cell{column, r})) return r;
  }
  return std::nullopt;
}

bool has_black(const Board& b, uint64_t column) {
  return std::any_of(b.black.begin(), b.black.end(),
                     [&](const Cell& c) { return c.column == column; });
}

}  // namespace

Action white_move(const Board& b, WhiteState& s) {
  if (s.newest) {
    const Cell w = *s.newest;
    if (!b.dead(w)) return {};
    if (!b.black_below(w)) {
      if (auto r = open_cell_below(b, w.column, w.row)) {
        s.newest = Cell{w.column, *r};
        return {Act::White, *s.newest};
      }
    }
  }
  for (uint64_t c = s.column ? *s.column + 1 : 0; c < b.columns(); ++c) {
    if (has_black(b, c)) continue;
    if (auto r = open_cell_below(b, c, b.n)) {
      s.column = c;
      s.newest = Cell{c, *r};
      return {Act::White, *s.newest};
    }
  }
  return {};
}

namespace {

using Key = std::tuple<std::set<Cell>, std::set<Cell>, std::set<Cell>, std::optional<Cell>,
                       std::optional<uint64_t>>;

struct Naive {
  int n;
  std::map<Key, bool> memo;
  int lowest = 1 << 30;
  bool white_illegal = false;

  // Black to move. True when White survives every continuation.
  bool black_turn(const Board& b, const WhiteState& w) {
    Key key{b.white, b.black, b.blackened, w.newest, w.column};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool ok = !b.alive().empty();  // Black passes: the position is final
    for (uint64_t c = 0; ok && c < b.columns(); ++c) {
      for (int r = 0; ok && r < n; ++r) {
        for (Act kind : {Act::Black, Act::Blacken}) {
          Action a{kind, Cell{c, r}};
          if (!legal(b, a)) continue;
          Board next = b;
          play(next, a);
          if (!white_turn(next, w)) {
            ok = false;
            break;
          }
        }
      }
    }
    memo.emplace(std::move(key), ok);
    return ok;
  }

  bool white_turn(Board b, WhiteState w) {
    Action a = white_move(b, w);
    if (a.kind == Act::White) {
      if (!legal(b, a)) {
        white_illegal = true;
        return false;
      }
      lowest = std::min(lowest, a.cell.row);
      play(b, a);
    }
    return black_turn(b, w);
  }
};

}  // namespace

SearchResult naive_search(int n) {
  Naive s{n, {}, 1 << 30, false};
  Board b;
  b.n = n;
  const bool wins = s.white_turn(b, WhiteState{});
  return {wins && !s.white_illegal, s.memo.size(), s.lowest};
}

namespace {

enum class Op { Dup, Out0, Out1, Lit, Cpy, Flip, Jmp, Halt };

constexpr std::array<std::pair<std::string_view, Op>, 8> kCodes{{
    {"1", Op::Dup},
    {"000", Op::Out0},
    {"001", Op::Out1},
    {"0100", Op::Lit},
    {"0101", Op::Cpy},
    {"0110", Op::Flip},
    {"01110", Op::Jmp},
    {"01111", Op::Halt},
}};

}  // namespace

Run run(bool prefix_free, const std::string& program, const std::string& condition,
        uint64_t budget) {
  size_t pos = 0;
  Run r;
  auto spend = [&](uint64_t cost) {
    cost = std::max<uint64_t>(1, cost);
    if (r.steps + cost > budget) return false;
    r.steps += cost;
    return true;
  };
  auto halt = [&] {
    if (prefix_free && pos != program.size()) return Run{Status::Invalid, "", r.steps};
    r.status = Status::Halted;
    return r;
  };
  for (;;) {
    if (pos == program.size()) {
      if (prefix_free) return Run{Status::Invalid, "", r.steps};
      r.status = Status::Halted;
      return r;
    }
    std::optional<Op> op;
    for (const auto& [bits, code] : kCodes) {
      if (std::string_view(program).substr(pos, bits.size()) == bits) {
        op = code;
        pos += bits.size();
        break;
      }
    }
    if (!op) return Run{Status::Invalid, "", r.steps};

    switch (*op) {
      case Op::Lit: {
        std::string payload;
        if (!prefix_free) {
          payload = program.substr(pos);
          pos = program.size();
        } else {
          uint64_t len = 0;
          for (int width = 0;; ++width) {
            if (pos + 2 > program.size() || width > 32) return Run{Status::Invalid, "", r.steps};
            const std::string pair = program.substr(pos, 2);
            pos += 2;
            if (pair == "01") break;
            if (pair == "10") return Run{Status::Invalid, "", r.steps};
            len = 2 * len + (pair == "11" ? 1 : 0);
          }
          if (pos + len > program.size()) return Run{Status::Invalid, "", r.steps};
          payload = program.substr(pos, len);
          pos += len;
        }
        if (!spend(payload.size())) return Run{Status::OutOfBudget, "", r.steps};
        r.output += payload;
        return halt();
      }
      case Op::Jmp:
        // Everything before the jump has already run without halting, so
        // the loop never ends.
        return Run{Status::OutOfBudget, "", 0};
      case Op::Halt:
        if (!spend(1)) return Run{Status::OutOfBudget, "", r.steps};
        return halt();
      case Op::Dup:
        if (!spend(r.output.size())) return Run{Status::OutOfBudget, "", r.steps};
        r.output += r.output;
        break;
      case Op::Flip:
        if (!spend(r.output.size())) return Run{Status::OutOfBudget, "", r.steps};
        for (char& ch : r.output) ch = ch == '0' ? '1' : '0';
        break;
      case Op::Cpy:
        if (!spend(condition.size())) return Run{Status::OutOfBudget, "", r.steps};
        r.output += condition;
        break;
      case Op::Out0:
      case Op::Out1:
        if (!spend(1)) return Run{Status::OutOfBudget, "", r.steps};
        r.output += *op == Op::Out0 ? '0' : '1';
        break;
    }
  }
}

std::optional<int> shortest(bool prefix_free, const std::string& x, const std::string& y,
                            int max_len, uint64_t cap) {
  for (int len = 0; len <= max_len; ++len) {
    for (uint64_t v = 0; v < (uint64_t{1} << len); ++v) {
      std::string p(static_cast<size_t>(len), '0');
      for (int i = 0; i < len; ++i) {
        if ((v >> (len - 1 - i)) & 1) p[static_cast<size_t>(i)] = '1';
      }
      Run r = run(prefix_free, p, y, cap);
      if (r.status == Status::Halted && r.output == x) return len;
    }
  }
  return std::nullopt;
}

bool weight_witness(const kgame::Rational& a, uint64_t size, const kgame::Rational& b_set,
                    uint64_t c) {
  if (a <= 0) return false;
  if (b_set == 0) return true;
  const kgame::Rational per_element = b_set / size;
  return a / per_element >= c;
}

}  // namespace oracle
