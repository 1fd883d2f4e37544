#pragma once

// Rules and state of a single board game G_n.
//
// The board has 2^n columns (one per string of length n) and n rows, row 0
// at the bottom. White and Black place pawns; Black may instead blacken a
// cell. Each player may own at most 2^i pawns in row i and Black may blacken
// at most floor(n/2) cells of any column. A white pawn is dead when its cell
// is blackened or a black pawn sits strictly below it in the same column;
// Black wins the limit position iff every white pawn is dead.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kgame {

inline constexpr int kMaxBoardRows = 62;

struct BoardParams {
  int n = 1;
  // The prefix arena replaces the per-board black row budget with a global
  // weight budget; every other rule stays.
  bool black_row_budget = true;
};

// Throws std::invalid_argument unless 1 <= n <= kMaxBoardRows.
void validate_params(const BoardParams& params);

struct Cell {
  uint64_t column = 0;
  int row = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

enum class Player { White, Black };

enum class MoveKind { Pass, PlaceWhite, PlaceBlack, Blacken };

struct Move {
  MoveKind kind = MoveKind::Pass;
  Cell cell{};

  static Move pass() { return {}; }
  static Move place_white(Cell c) { return {MoveKind::PlaceWhite, c}; }
  static Move place_black(Cell c) { return {MoveKind::PlaceBlack, c}; }
  static Move blacken(Cell c) { return {MoveKind::Blacken, c}; }

  bool is_pass() const { return kind == MoveKind::Pass; }
  friend bool operator==(const Move&, const Move&) = default;
};

enum class Reason {
  RowBudgetWhite,
  RowBudgetBlack,
  BlackenBudget,
  WrongActor,
  CellOccupied,
  OffBoard,
  GlobalRowBudget,
  KraftBudget,
};

struct Violation {
  Reason reason;
  std::string detail;
};

std::string_view to_string(Reason reason);
std::optional<Reason> reason_from_string(std::string_view text);
std::string_view to_string(Player player);
std::string_view to_string(MoveKind kind);

// Thrown when an engine applies a move the rules reject.
class RuleError : public std::runtime_error {
 public:
  RuleError(Player player, Violation violation);
  Player player() const { return player_; }
  const Violation& violation() const { return violation_; }

 private:
  Player player_;
  Violation violation_;
};

class BoardState {
 public:
  explicit BoardState(BoardParams params);

  const BoardParams& params() const { return params_; }
  int n() const { return params_.n; }
  uint64_t column_count() const { return uint64_t{1} << params_.n; }
  int blacken_cap() const { return params_.n / 2; }
  static uint64_t row_budget(int row) { return uint64_t{1} << row; }

  const std::set<Cell>& white() const { return white_; }
  const std::set<Cell>& black() const { return black_; }
  const std::set<Cell>& blackened() const { return blackened_; }
  // White pawns in placement order.
  const std::vector<Cell>& white_order() const { return white_order_; }

  uint64_t white_in_row(int row) const { return white_per_row_.at(static_cast<size_t>(row)); }
  uint64_t black_in_row(int row) const { return black_per_row_.at(static_cast<size_t>(row)); }
  const std::vector<uint64_t>& white_per_row() const { return white_per_row_; }
  const std::vector<uint64_t>& black_per_row() const { return black_per_row_; }
  int blackened_in_column(uint64_t column) const;
  // Only columns that have been blackened at least once.
  const std::map<uint64_t, int>& blackened_per_column() const { return blackened_per_column_; }
  // Lowest black pawn row in the column, if any.
  std::optional<int> lowest_black(uint64_t column) const;
  bool has_black_pawn(uint64_t column) const { return lowest_black(column).has_value(); }

  bool in_bounds(Cell cell) const {
    return cell.row >= 0 && cell.row < params_.n && cell.column < column_count();
  }

  uint64_t move_index() const { return move_index_; }

  // Mutating form of apply_move; throws RuleError and leaves the state
  // untouched when the move is rejected.
  void apply(Player player, const Move& move);

 private:
  BoardParams params_;
  std::set<Cell> white_;
  std::set<Cell> black_;
  std::set<Cell> blackened_;
  std::vector<Cell> white_order_;
  std::vector<uint64_t> white_per_row_;
  std::vector<uint64_t> black_per_row_;
  std::map<uint64_t, int> blackened_per_column_;
  std::map<uint64_t, int> lowest_black_;
  uint64_t move_index_ = 0;
};

BoardState new_board(BoardParams params);

// Total: never throws, reports the first rule the action would break.
std::optional<Violation> validate_move(const BoardState& state, Player player, const Move& move);

// Same check without building the message.
std::optional<Reason> broken_rule(const BoardState& state, Player player, const Move& move);
inline bool is_legal(const BoardState& state, Player player, const Move& move) {
  return !broken_rule(state, player, move).has_value();
}

// Copying form; throws RuleError with the same reason validate_move gives.
BoardState apply_move(const BoardState& state, Player player, const Move& move);

// Requires a white pawn on the cell (std::invalid_argument otherwise).
bool is_dead(const BoardState& state, Cell cell);

enum class Outcome { WhiteWins, BlackWins, RuleViolation };

struct Verdict {
  Outcome outcome = Outcome::BlackWins;
  std::vector<Cell> witnesses;  // alive white pawns, ascending (WhiteWins only)
  Player culprit = Player::White;
  Reason reason = Reason::WrongActor;
  std::string detail;

  static Verdict white_wins(std::vector<Cell> witnesses);
  static Verdict black_wins();
  static Verdict violation(Player culprit, Violation v);
};

Verdict verdict(const BoardState& state);

// Counters recomputed from the pawn sets, for coherence checks.
struct RowCounts {
  std::vector<uint64_t> white;
  std::vector<uint64_t> black;
};
RowCounts row_counts(const BoardState& state);
int blackened_count(const BoardState& state, uint64_t column);

}  // namespace kgame
