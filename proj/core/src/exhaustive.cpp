#include <algorithm>
#include <map>
#include <unordered_map>

#include "kgame/strategies.hpp"

namespace kgame {

namespace {

// The search runs White's strategy against Black's complete legal menu,
// quotiented by two exact equivalences:
//  - untouched columns are interchangeable; the smallest stands for all;
//  - a cell White can never occupy again (any cell of a column left of her
//    current one, of a column she will skip because it holds a black pawn,
//    or above her newest pawn in the current column) influences neither
//    her moves nor the verdict. Such cells enter the position key only via
//    the row counters, and Black's moves there are one PlaceBlack per row
//    (Blacken there changes nothing the key sees).
// When Black is to move, White's newest pawn is alive, so every open column
// holds nothing but blackened cells (below the newest pawn, for the current
// column).
struct Search {
  const MatchLimits& limits;
  uint64_t node_budget;
  ExhaustiveResult result;
  // Position key -> largest remaining move allowance already proven safe.
  std::unordered_map<std::string, uint64_t> proven;
  bool lost = false;
  bool settled = false;

  struct View {
    std::vector<uint64_t> open;  // current column first, then open ahead columns
    std::vector<uint64_t> touched_settled;
    uint64_t untouched = 0;
    std::optional<uint64_t> first_untouched;
  };

  static View view(const BoardState& s, const WhiteMemory& m) {
    std::set<uint64_t> touched;
    for (const Cell& c : s.white()) touched.insert(c.column);
    for (const Cell& c : s.black()) touched.insert(c.column);
    for (const Cell& c : s.blackened()) touched.insert(c.column);
    View v;
    if (m.current_column) v.open.push_back(*m.current_column);
    for (uint64_t c : touched) {
      if (m.current_column && c == *m.current_column) continue;
      const bool behind = m.current_column && c < *m.current_column;
      (behind || s.has_black_pawn(c) ? v.touched_settled : v.open).push_back(c);
    }
    v.untouched = s.column_count() - touched.size();
    for (uint64_t c = 0; c < s.column_count(); ++c) {
      if (!touched.contains(c)) {
        v.first_untouched = c;
        break;
      }
    }
    return v;
  }

  // Bit mask of blackened rows of a column below `below`.
  static uint64_t blackened_mask(const BoardState& s, uint64_t column, int below) {
    uint64_t mask = 0;
    auto it = s.blackened().lower_bound(Cell{column, 0});
    for (; it != s.blackened().end() && it->column == column && it->row < below; ++it) {
      mask |= uint64_t{1} << it->row;
    }
    return mask;
  }

  static std::string key(const BoardState& s, const WhiteMemory& m, const View& v) {
    std::string k;
    auto put = [&k](uint64_t x) { k.append(reinterpret_cast<const char*>(&x), sizeof x); };
    put(m.newest ? static_cast<uint64_t>(m.newest->row) : ~uint64_t{0});
    for (uint64_t c : v.open) {
      const int below = m.current_column && c == *m.current_column && m.newest ? m.newest->row
                                                                                : s.n();
      put(blackened_mask(s, c, below));
    }
    put(~uint64_t{0});
    put(v.untouched);
    for (uint64_t x : s.white_per_row()) put(x);
    for (uint64_t x : s.black_per_row()) put(x);
    return k;
  }

  static std::vector<Move> black_menu(const BoardState& s, const WhiteMemory& m, const View& v) {
    std::vector<Move> menu;
    std::vector<bool> waste_offered(static_cast<size_t>(s.n()), false);
    auto offer = [&](const Move& mv) {
      if (is_legal(s, Player::Black, mv)) menu.push_back(mv);
    };
    auto offer_waste = [&](const Cell& c) {
      const auto r = static_cast<size_t>(c.row);
      if (waste_offered[r]) return;
      Move mv = Move::place_black(c);
      if (is_legal(s, Player::Black, mv)) {
        menu.push_back(mv);
        waste_offered[r] = true;
      }
    };

    for (uint64_t c : v.open) {
      const bool current = m.current_column && c == *m.current_column;
      const int top = current && m.newest ? m.newest->row : s.n() - 1;
      for (int r = 0; r <= top; ++r) {
        offer(Move::blacken(Cell{c, r}));
        offer(Move::place_black(Cell{c, r}));
      }
      for (int r = top + 1; r < s.n(); ++r) offer_waste(Cell{c, r});
    }
    if (v.first_untouched) {
      for (int r = 0; r < s.n(); ++r) {
        offer(Move::blacken(Cell{*v.first_untouched, r}));
        offer(Move::place_black(Cell{*v.first_untouched, r}));
      }
    }
    for (uint64_t c : v.touched_settled) {
      for (int r = 0; r < s.n(); ++r) offer_waste(Cell{c, r});
    }
    return menu;
  }

  void record_white(const Move& m) {
    if (m.kind != MoveKind::PlaceWhite) return;
    auto& low = result.lowest_white_row;
    low = low ? std::min(*low, m.cell.row) : m.cell.row;
  }

  void settle(const BoardState& s, const WhiteMemory& m) {
    // Fast path: White's newest pawn alive already decides the outcome.
    if (settled && m.newest && s.white().contains(*m.newest) && !is_dead(s, *m.newest)) return;
    Verdict v = verdict(s);
    if (v.outcome != Outcome::WhiteWins) {
      result.worst = std::move(v);
      lost = true;
    } else if (!settled) {
      result.worst = std::move(v);
      settled = true;
    }
  }

  // Black's turn at `s`; White has just moved (or passed).
  void black_turn(const BoardState& s, const WhiteMemory& memory) {
    if (lost) return;
    if (++result.nodes > node_budget) {
      throw ResourceLimitError("exhaustive search exceeded node budget " +
                               std::to_string(node_budget));
    }
    const uint64_t remaining =
        limits.max_moves > s.move_index() ? limits.max_moves - s.move_index() : 0;

    // Black passing: White's newest pawn is alive, so she passes too and the
    // position is final.
    settle(s, memory);
    if (lost || remaining == 0) return;

    const View v = view(s, memory);
    std::string k = key(s, memory, v);
    if (auto it = proven.find(k); it != proven.end() && it->second >= remaining) return;

    for (const Move& m : black_menu(s, memory, v)) {
      BoardState next = s;
      next.apply(Player::Black, m);
      white_turn(std::move(next), memory);
      if (lost) return;
    }
    proven[k] = std::max(proven[k], remaining);
    result.distinct_positions = proven.size();
  }

  void white_turn(BoardState s, const WhiteMemory& memory) {
    if (s.move_index() >= limits.max_moves) {
      settle(s, memory);
      return;
    }
    auto [move, next_memory] = white_next_move(s, memory);
    next_memory.columns_visited.clear();
    if (auto v = validate_move(s, Player::White, move)) {
      result.worst = Verdict::violation(Player::White, std::move(*v));
      lost = true;
      return;
    }
    record_white(move);
    s.apply(Player::White, move);
    black_turn(s, next_memory);
  }
};

}  // namespace

ExhaustiveResult exhaustive_black_search(const BoardParams& params, const MatchLimits& limits,
                                         uint64_t node_budget) {
  validate_params(params);
  validate_limits(limits);
  Search search{limits, node_budget, {}, {}, false, false};
  search.white_turn(BoardState(params), WhiteMemory{});
  if (!search.settled && !search.lost) search.settle(BoardState(params), WhiteMemory{});
  return search.result;
}

}  // namespace kgame
