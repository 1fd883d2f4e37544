#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "kgame/board.hpp"
#include "kgame/lab.hpp"
#include "kgame/trace.hpp"

namespace kgame {

// White's column-scanning strategy. White keeps one pawn "in play": when it
// is blackened she drops to the next non-blackened cell below; when a black
// pawn lands strictly below it she moves right to the next column without a
// black pawn and starts at its topmost non-blackened cell.
struct WhiteMemory {
  std::optional<uint64_t> current_column;
  std::optional<Cell> newest;
  std::vector<uint64_t> columns_visited;
};

std::pair<Move, WhiteMemory> white_next_move(const BoardState& state, const WhiteMemory& memory);

// Lowest row White's strategy can ever use on an n-row board: ceil(n/2) - 1.
int white_floor_row(int n);

class BoardPlayer {
 public:
  virtual ~BoardPlayer() = default;
  virtual Move next_move(const BoardState& state) = 0;
  // False while the player may still act on an unchanged position (for
  // instance a lab-driven player whose enumeration is not finished).
  virtual bool idle() const { return true; }
  virtual std::string name() const = 0;
};

class StandardWhite : public BoardPlayer {
 public:
  Move next_move(const BoardState& state) override;
  std::string name() const override { return "standard"; }
  const WhiteMemory& memory() const { return memory_; }

 private:
  WhiteMemory memory_;
};

class ScriptedPlayer : public BoardPlayer {
 public:
  explicit ScriptedPlayer(std::vector<Move> script) : script_(std::move(script)) {}
  Move next_move(const BoardState& state) override;
  std::string name() const override { return "scripted"; }

 private:
  std::vector<Move> script_;
  size_t pos_ = 0;
};

// Uniform over a bounded menu: every blacken/place cell in columns holding
// white pawns plus one fresh column, with Pass at probability 1/4.
class RandomBlack : public BoardPlayer {
 public:
  explicit RandomBlack(uint64_t seed) : seed_(seed), rng_(seed) {}
  Move next_move(const BoardState& state) override;
  std::string name() const override { return "random"; }
  uint64_t seed() const { return seed_; }

 private:
  uint64_t seed_;
  std::mt19937_64 rng_;
};

// Attacks White's most recent alive pawn: blacken it while the column's
// blacken budget lasts, then place a pawn in the highest legal row below.
class GreedyKiller : public BoardPlayer {
 public:
  Move next_move(const BoardState& state) override;
  std::string name() const override { return "greedy"; }
};

// Spends pawn budgets bottom-up, first in columns left of White's current
// column, then pre-blocking the columns ahead of her.
class BudgetExhauster : public BoardPlayer {
 public:
  Move next_move(const BoardState& state) override;
  std::string name() const override { return "exhauster"; }

 private:
  uint64_t next_ahead_ = 0;
};

struct BoardRange {
  int n_min = 1;
  int n_max = 1;
  bool contains(int n) const { return n >= n_min && n <= n_max; }
};

// Which discoveries produce black pawns: plain programs (plain arena and
// single boards) or prefix-free programs (prefix arena).
enum class PawnSource { Plain, Prefix };

struct BoardAction {
  int board = 0;
  Move move;
  friend bool operator==(const BoardAction&, const BoardAction&) = default;
};

// Actions induced by the discoveries of the table's latest stage:
//  - an unconditional program p printing x with |p| < |x| gives
//    PlaceBlack(value(x), |p|) on board |x|;
//  - a conditional program p printing the integer i from condition x, with
//    i < |x| and |p| < floor(log2 |x|) - 1, gives Blacken(value(x), i) on
//    board |x| the first time the bound for (i | x) crosses that threshold.
// Budgets are never consulted; legality follows from counting.
std::vector<BoardAction> semicomputable_black_actions(const ApproxTable& table, BoardRange range,
                                                      PawnSource source);

// Lab configuration used by the lab-driven Black on boards in range.
LabConfig semicomputable_lab_config(BoardRange range, PawnSource source);

// Single-board lab-driven Black: one dovetail stage per turn, then plays the
// induced actions one per turn.
class SemicomputableBlack : public BoardPlayer {
 public:
  explicit SemicomputableBlack(int n);
  SemicomputableBlack(int n, LabConfig config);
  Move next_move(const BoardState& state) override;
  bool idle() const override;
  std::string name() const override { return "semicomputable"; }
  const ApproxTable& table() const { return table_; }

 private:
  int n_;
  ApproxTable table_;
  std::deque<Move> queue_;
};

// Builds a named adversary: random | greedy | exhauster | semicomputable.
std::unique_ptr<BoardPlayer> make_black(std::string_view name, int n, uint64_t seed);

struct MatchLimits {
  uint64_t max_moves = 1'000'000;
  int quiescence_rounds = 2;
};

void validate_limits(const MatchLimits& limits);

struct MatchStats {
  uint64_t moves = 0;
  bool quiescent = false;
  std::optional<int> lowest_white_row;
  // Invariant failures observed after each accepted move; empty when clean.
  std::vector<std::string> invariant_failures;
};

struct MatchResult {
  BoardState final;
  Verdict verdict;
  MatchTrace trace;
  MatchStats stats;
};

// White moves first. Stops once both players pass (and are idle) for
// limits.quiescence_rounds consecutive rounds, or after limits.max_moves
// moves. An illegal move ends the match with RuleViolation for its author.
MatchResult play_match(const BoardParams& params, BoardPlayer& white, BoardPlayer& black,
                       const MatchLimits& limits);

// Checks every counting invariant of a position; returns failure messages.
std::vector<std::string> check_board_invariants(const BoardState& state);

struct ExhaustiveResult {
  Verdict worst;
  uint64_t nodes = 0;
  uint64_t distinct_positions = 0;
  std::optional<int> lowest_white_row;
};

// Plays White's strategy against every Black line over the complete legal
// menu (Pass, every Blacken, every PlaceBlack), with untouched columns
// collapsed to a single representative. Returns the worst verdict for White.
// Throws ResourceLimitError once node_budget expansions are exceeded.
ExhaustiveResult exhaustive_black_search(const BoardParams& params, const MatchLimits& limits,
                                         uint64_t node_budget = 20'000'000);

}  // namespace kgame
