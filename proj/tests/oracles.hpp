#pragma once

// Reference implementations written from the rules alone. They share no
// code with the engines beyond plain data types, so agreement between the
// two is evidence rather than tautology.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kgame/board.hpp"
#include "kgame/rational.hpp"

namespace oracle {

using kgame::Cell;

// A board as three plain sets; every count is recomputed on demand.
struct Board {
  int n = 1;
  std::set<Cell> white, black, blackened;

  uint64_t columns() const { return uint64_t{1} << n; }
  uint64_t white_in_row(int row) const;
  uint64_t black_in_row(int row) const;
  int blackened_in_column(uint64_t column) const;
  bool black_below(Cell c) const;
  bool dead(Cell c) const { return blackened.contains(c) || black_below(c); }
  std::vector<Cell> alive() const;
};

enum class Act { Pass, White, Black, Blacken };
struct Action {
  Act kind = Act::Pass;
  Cell cell{};
};

// True when the action keeps every restriction (budgets, blacken cap,
// no duplicate pawn of one colour, no double blackening, on the board).
bool legal(const Board& b, const Action& a);
void play(Board& b, const Action& a);

// White's strategy re-derived from its description: stay while the newest
// pawn lives; if only blackened, take the next open cell below; otherwise
// scan right for a column without black pawns and take its topmost open
// cell. `column` is the column White is working in, if any.
struct WhiteState {
  std::optional<Cell> newest;
  std::optional<uint64_t> column;
};
Action white_move(const Board& b, WhiteState& s);

// Plain minimax over every Black action on an unreduced position space.
// Returns whether White ends with a living pawn against every Black line,
// plus the number of distinct positions visited. Feasible for n <= 2.
struct SearchResult {
  bool white_always_wins = false;
  uint64_t positions = 0;
  int lowest_white_row = 1 << 30;
};
SearchResult naive_search(int n);

// The reference machine, interpreted straight from its opcode table.
enum class Status { Halted, OutOfBudget, Invalid };
struct Run {
  Status status = Status::Invalid;
  std::string output;
  uint64_t steps = 0;
};
Run run(bool prefix_free, const std::string& program, const std::string& condition,
        uint64_t budget);

// Shortest program of length <= max_len that halts with output x within
// cap steps, by enumeration through `run`.
std::optional<int> shortest(bool prefix_free, const std::string& x, const std::string& y,
                            int max_len, uint64_t cap);

// A(s)/B(s) >= C with B(s) = B(j)/size, evaluated by division.
bool weight_witness(const kgame::Rational& a, uint64_t size, const kgame::Rational& b_set,
                    uint64_t c);

}  // namespace oracle
