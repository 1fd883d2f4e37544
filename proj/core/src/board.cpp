#include "kgame/board.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <utility>

namespace kgame {

namespace {

constexpr std::array<std::pair<Reason, std::string_view>, 8> kReasonNames{{
    {Reason::RowBudgetWhite, "RowBudgetWhite"},
    {Reason::RowBudgetBlack, "RowBudgetBlack"},
    {Reason::BlackenBudget, "BlackenBudget"},
    {Reason::WrongActor, "WrongActor"},
    {Reason::CellOccupied, "CellOccupied"},
    {Reason::OffBoard, "OffBoard"},
    {Reason::GlobalRowBudget, "GlobalRowBudget"},
    {Reason::KraftBudget, "KraftBudget"},
}};

std::string cell_text(Cell c) {
  std::ostringstream os;
  os << "(col " << c.column << ", row " << c.row << ")";
  return os.str();
}

}  // namespace

void validate_params(const BoardParams& params) {
  if (params.n < 1 || params.n > kMaxBoardRows) {
    throw std::invalid_argument("board size n must be in [1, " + std::to_string(kMaxBoardRows) +
                                "], got " + std::to_string(params.n));
  }
}

std::string_view to_string(Reason reason) {
  for (const auto& [r, name] : kReasonNames) {
    if (r == reason) return name;
  }
  return "Unknown";
}

std::optional<Reason> reason_from_string(std::string_view text) {
  for (const auto& [r, name] : kReasonNames) {
    if (name == text) return r;
  }
  return std::nullopt;
}

std::string_view to_string(Player player) { return player == Player::White ? "White" : "Black"; }

std::string_view to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::Pass: return "pass";
    case MoveKind::PlaceWhite: return "place_white";
    case MoveKind::PlaceBlack: return "place_black";
    case MoveKind::Blacken: return "blacken";
  }
  return "?";
}

RuleError::RuleError(Player player, Violation violation)
    : std::runtime_error(std::string(to_string(player)) + ": " +
                         std::string(to_string(violation.reason)) + ": " + violation.detail),
      player_(player),
      violation_(std::move(violation)) {}

BoardState::BoardState(BoardParams params) : params_(params) {
  validate_params(params_);
  white_per_row_.assign(static_cast<size_t>(params_.n), 0);
  black_per_row_.assign(static_cast<size_t>(params_.n), 0);
}

int BoardState::blackened_in_column(uint64_t column) const {
  auto it = blackened_per_column_.find(column);
  return it == blackened_per_column_.end() ? 0 : it->second;
}

std::optional<int> BoardState::lowest_black(uint64_t column) const {
  auto it = lowest_black_.find(column);
  if (it == lowest_black_.end()) return std::nullopt;
  return it->second;
}

void BoardState::apply(Player player, const Move& move) {
  if (broken_rule(*this, player, move)) {
    throw RuleError(player, std::move(*validate_move(*this, player, move)));
  }
  const Cell c = move.cell;
  const auto row = static_cast<size_t>(c.row);
  switch (move.kind) {
    case MoveKind::Pass:
      break;
    case MoveKind::PlaceWhite:
      white_.insert(c);
      white_order_.push_back(c);
      ++white_per_row_[row];
      break;
    case MoveKind::PlaceBlack: {
      black_.insert(c);
      ++black_per_row_[row];
      auto [it, inserted] = lowest_black_.try_emplace(c.column, c.row);
      if (!inserted) it->second = std::min(it->second, c.row);
      break;
    }
    case MoveKind::Blacken:
      blackened_.insert(c);
      ++blackened_per_column_[c.column];
      break;
  }
  ++move_index_;
}

BoardState new_board(BoardParams params) { return BoardState(params); }

std::optional<Reason> broken_rule(const BoardState& state, Player player, const Move& move) {
  if (move.kind == MoveKind::Pass) return std::nullopt;
  if ((player == Player::White) != (move.kind == MoveKind::PlaceWhite)) return Reason::WrongActor;
  const Cell c = move.cell;
  if (!state.in_bounds(c)) return Reason::OffBoard;
  switch (move.kind) {
    case MoveKind::PlaceWhite:
      if (state.white().contains(c)) return Reason::CellOccupied;
      if (state.white_in_row(c.row) >= BoardState::row_budget(c.row)) return Reason::RowBudgetWhite;
      break;
    case MoveKind::PlaceBlack:
      if (state.black().contains(c)) return Reason::CellOccupied;
      if (state.params().black_row_budget &&
          state.black_in_row(c.row) >= BoardState::row_budget(c.row)) {
        return Reason::RowBudgetBlack;
      }
      break;
    case MoveKind::Blacken:
      if (state.blackened().contains(c)) return Reason::CellOccupied;
      if (state.blackened_in_column(c.column) >= state.blacken_cap()) return Reason::BlackenBudget;
      break;
    case MoveKind::Pass:
      break;
  }
  return std::nullopt;
}

std::optional<Violation> validate_move(const BoardState& state, Player player, const Move& move) {
  auto reason = broken_rule(state, player, move);
  if (!reason) return std::nullopt;
  const Cell c = move.cell;
  std::string detail;
  switch (*reason) {
    case Reason::WrongActor:
      detail = std::string(to_string(player)) + " cannot " + std::string(to_string(move.kind));
      break;
    case Reason::OffBoard:
      detail = cell_text(c) + " is outside the " + std::to_string(state.n()) + "-row board";
      break;
    case Reason::CellOccupied:
      detail = move.kind == MoveKind::PlaceWhite   ? "white pawn already on " + cell_text(c)
               : move.kind == MoveKind::PlaceBlack ? "black pawn already on " + cell_text(c)
                                                   : cell_text(c) + " is already blackened";
      break;
    case Reason::RowBudgetWhite:
      detail = "row " + std::to_string(c.row) + " already holds " +
               std::to_string(state.white_in_row(c.row)) + " white pawns";
      break;
    case Reason::RowBudgetBlack:
      detail = "row " + std::to_string(c.row) + " already holds " +
               std::to_string(state.black_in_row(c.row)) + " black pawns";
      break;
    case Reason::BlackenBudget:
      detail = "column " + std::to_string(c.column) + " already has " +
               std::to_string(state.blackened_in_column(c.column)) + " blackened cells (cap " +
               std::to_string(state.blacken_cap()) + ")";
      break;
    default:
      break;
  }
  return Violation{*reason, std::move(detail)};
}

BoardState apply_move(const BoardState& state, Player player, const Move& move) {
  BoardState next = state;
  next.apply(player, move);
  return next;
}

bool is_dead(const BoardState& state, Cell cell) {
  if (!state.white().contains(cell)) {
    throw std::invalid_argument("no white pawn on " + cell_text(cell));
  }
  if (state.blackened().contains(cell)) return true;
  auto low = state.lowest_black(cell.column);
  return low.has_value() && *low < cell.row;
}

Verdict Verdict::white_wins(std::vector<Cell> witnesses) {
  Verdict v;
  v.outcome = Outcome::WhiteWins;
  v.witnesses = std::move(witnesses);
  return v;
}

Verdict Verdict::black_wins() { return Verdict{}; }

Verdict Verdict::violation(Player culprit, Violation viol) {
  Verdict v;
  v.outcome = Outcome::RuleViolation;
  v.culprit = culprit;
  v.reason = viol.reason;
  v.detail = std::move(viol.detail);
  return v;
}

Verdict verdict(const BoardState& state) {
  std::vector<Cell> alive;
  for (const Cell& w : state.white()) {
    if (!is_dead(state, w)) alive.push_back(w);
  }
  if (alive.empty()) return Verdict::black_wins();
  return Verdict::white_wins(std::move(alive));
}

RowCounts row_counts(const BoardState& state) {
  return {state.white_per_row(), state.black_per_row()};
}

int blackened_count(const BoardState& state, uint64_t column) {
  return state.blackened_in_column(column);
}

}  // namespace kgame
