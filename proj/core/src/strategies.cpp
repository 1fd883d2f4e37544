#include "kgame/strategies.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "kgame/record_format.hpp"

namespace kgame {

namespace {

// Topmost non-blackened row of a column strictly below `below`.
std::optional<int> topmost_open_row(const BoardState& state, uint64_t column, int below) {
  for (int r = below - 1; r >= 0; --r) {
    if (!state.blackened().contains(Cell{column, r})) return r;
  }
  return std::nullopt;
}

bool legal(const BoardState& state, Player p, const Move& m) { return is_legal(state, p, m); }

std::optional<Cell> latest_alive_white(const BoardState& state) {
  const auto& order = state.white_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (!is_dead(state, *it)) return *it;
  }
  return std::nullopt;
}

}  // namespace

int white_floor_row(int n) { return (n + 1) / 2 - 1; }

std::pair<Move, WhiteMemory> white_next_move(const BoardState& state, const WhiteMemory& memory) {
  WhiteMemory next = memory;

  if (memory.newest && state.white().contains(*memory.newest)) {
    const Cell pawn = *memory.newest;
    if (!is_dead(state, pawn)) return {Move::pass(), next};

    auto low = state.lowest_black(pawn.column);
    const bool pawn_below = low.has_value() && *low < pawn.row;
    if (!pawn_below) {
      // Only blackened: one row down, past any further blackened cells.
      if (auto row = topmost_open_row(state, pawn.column, pawn.row)) {
        Cell target{pawn.column, *row};
        next.newest = target;
        return {Move::place_white(target), next};
      }
    }
  }

  const uint64_t start = memory.current_column ? *memory.current_column + 1 : 0;
  for (uint64_t c = start; c < state.column_count(); ++c) {
    if (state.has_black_pawn(c)) continue;
    auto row = topmost_open_row(state, c, state.n());
    if (!row) continue;
    Cell target{c, *row};
    next.current_column = c;
    next.newest = target;
    next.columns_visited.push_back(c);
    return {Move::place_white(target), next};
  }
  return {Move::pass(), next};
}

Move StandardWhite::next_move(const BoardState& state) {
  auto [move, memory] = white_next_move(state, memory_);
  memory_ = std::move(memory);
  return move;
}

Move ScriptedPlayer::next_move(const BoardState&) {
  if (pos_ >= script_.size()) return Move::pass();
  return script_[pos_++];
}

Move RandomBlack::next_move(const BoardState& state) {
  if (std::uniform_int_distribution<int>(0, 3)(rng_) == 0) return Move::pass();

  std::set<uint64_t> columns;
  for (const Cell& w : state.white()) columns.insert(w.column);

  auto touched = [&](uint64_t c) {
    if (columns.contains(c) || state.blackened_in_column(c) > 0 || state.has_black_pawn(c)) {
      return true;
    }
    return false;
  };
  std::uniform_int_distribution<uint64_t> pick_column(0, state.column_count() - 1);
  for (int attempt = 0; attempt < 64; ++attempt) {
    uint64_t c = pick_column(rng_);
    if (!touched(c)) {
      columns.insert(c);
      break;
    }
  }

  std::vector<Move> menu;
  for (uint64_t c : columns) {
    for (int r = 0; r < state.n(); ++r) {
      const Cell cell{c, r};
      if (legal(state, Player::Black, Move::blacken(cell))) menu.push_back(Move::blacken(cell));
      if (legal(state, Player::Black, Move::place_black(cell))) {
        menu.push_back(Move::place_black(cell));
      }
    }
  }
  if (menu.empty()) return Move::pass();
  return menu[std::uniform_int_distribution<size_t>(0, menu.size() - 1)(rng_)];
}

Move GreedyKiller::next_move(const BoardState& state) {
  auto target = latest_alive_white(state);
  if (!target) return Move::pass();

  Move blacken = Move::blacken(*target);
  if (legal(state, Player::Black, blacken)) return blacken;

  for (int r = target->row - 1; r >= 0; --r) {
    Move place = Move::place_black(Cell{target->column, r});
    if (legal(state, Player::Black, place)) return place;
  }
  return Move::pass();
}

Move BudgetExhauster::next_move(const BoardState& state) {
  std::optional<uint64_t> white_column;
  if (!state.white_order().empty()) white_column = state.white_order().back().column;

  std::set<uint64_t> left;
  if (white_column) {
    for (const Cell& w : state.white()) {
      if (w.column < *white_column) left.insert(w.column);
    }
  }

  for (int r = 0; r < state.n(); ++r) {
    if (state.black_in_row(r) >= BoardState::row_budget(r)) continue;
    for (uint64_t c : left) {
      Move m = Move::place_black(Cell{c, r});
      if (legal(state, Player::Black, m)) return m;
    }
    const uint64_t first_ahead = white_column ? *white_column + 1 : 0;
    next_ahead_ = std::max(next_ahead_, first_ahead);
    while (next_ahead_ < state.column_count() && state.has_black_pawn(next_ahead_)) ++next_ahead_;
    if (next_ahead_ < state.column_count()) {
      Move m = Move::place_black(Cell{next_ahead_, r});
      if (legal(state, Player::Black, m)) return m;
    }
  }
  return Move::pass();
}

std::vector<BoardAction> semicomputable_black_actions(const ApproxTable& table, BoardRange range,
                                                      PawnSource source) {
  const auto& log = table.discovered();
  const uint64_t stage = table.stage();
  const Discipline pawn_discipline =
      source == PawnSource::Plain ? Discipline::Plain : Discipline::PrefixFree;

  auto threshold_ok = [](size_t program_len, int n) {
    // |p| < floor(log2 n) - 1
    return static_cast<int>(program_len) + 1 < floor_log2(static_cast<uint64_t>(n));
  };

  size_t first = log.size();
  while (first > 0 && log[first - 1].stage == stage) --first;

  std::vector<BoardAction> actions;
  for (size_t idx = first; idx < log.size(); ++idx) {
    const ProgramRecord& rec = log[idx];
    if (rec.condition.empty()) {
      if (rec.discipline != pawn_discipline) continue;
      const int n = static_cast<int>(rec.output.size());
      if (!range.contains(n) || rec.program.size() >= rec.output.size()) continue;
      actions.push_back({n, Move::place_black(Cell{*rec.output.value(),
                                                   static_cast<int>(rec.program.size())})});
      continue;
    }
    if (rec.discipline != Discipline::Plain) continue;
    const int n = static_cast<int>(rec.condition.size());
    if (!range.contains(n)) continue;
    auto row = rec.output.as_integer();
    if (!row || *row >= static_cast<uint64_t>(n)) continue;
    if (!threshold_ok(rec.program.size(), n)) continue;
    // Emit only on the first crossing of the threshold.
    bool crossed_before = false;
    for (size_t j = 0; j < first; ++j) {
      const ProgramRecord& old = log[j];
      if (old.discipline == Discipline::Plain && old.condition == rec.condition &&
          old.output == rec.output && threshold_ok(old.program.size(), n)) {
        crossed_before = true;
        break;
      }
    }
    if (crossed_before) continue;
    actions.push_back({n, Move::blacken(Cell{*rec.condition.value(), static_cast<int>(*row)})});
  }
  return actions;
}

LabConfig semicomputable_lab_config(BoardRange range, PawnSource source) {
  if (range.n_min < 1 || range.n_min > range.n_max || range.n_max > 20) {
    throw std::invalid_argument("lab-driven Black supports boards 1..20");
  }
  LabConfig config;
  config.max_len = range.n_max - 1;
  config.cond_max_len = std::max(0, floor_log2(static_cast<uint64_t>(range.n_max)) - 2);
  config.step_cap = 64;
  config.plain = true;
  config.prefix = source == PawnSource::Prefix;
  for (int n = std::max(range.n_min, 4); n <= range.n_max; ++n) {
    auto level = all_strings(n);
    config.conditions.insert(config.conditions.end(), level.begin(), level.end());
  }
  return config;
}

SemicomputableBlack::SemicomputableBlack(int n)
    : SemicomputableBlack(n, semicomputable_lab_config({n, n}, PawnSource::Plain)) {}

SemicomputableBlack::SemicomputableBlack(int n, LabConfig config)
    : n_(n), table_(std::move(config)) {}

Move SemicomputableBlack::next_move(const BoardState&) {
  if (!table_.saturated()) {
    dovetail_stage(table_);
    for (const auto& a : semicomputable_black_actions(table_, {n_, n_}, PawnSource::Plain)) {
      queue_.push_back(a.move);
    }
  }
  if (queue_.empty()) return Move::pass();
  Move m = queue_.front();
  queue_.pop_front();
  return m;
}

bool SemicomputableBlack::idle() const { return queue_.empty() && table_.saturated(); }

std::unique_ptr<BoardPlayer> make_black(std::string_view name, int n, uint64_t seed) {
  if (name == "random") return std::make_unique<RandomBlack>(seed);
  if (name == "greedy") return std::make_unique<GreedyKiller>();
  if (name == "exhauster") return std::make_unique<BudgetExhauster>();
  if (name == "semicomputable") return std::make_unique<SemicomputableBlack>(n);
  throw std::invalid_argument("unknown black strategy '" + std::string(name) + "'");
}

void validate_limits(const MatchLimits& limits) {
  if (limits.max_moves < 1) throw std::invalid_argument("max_moves must be >= 1");
  if (limits.quiescence_rounds < 1) throw std::invalid_argument("quiescence_rounds must be >= 1");
}

std::vector<std::string> check_board_invariants(const BoardState& state) {
  std::vector<std::string> failures;
  const int n = state.n();
  std::vector<uint64_t> white(static_cast<size_t>(n), 0), black(static_cast<size_t>(n), 0);
  std::vector<uint64_t> killed_from_below(static_cast<size_t>(n), 0);
  for (const Cell& w : state.white()) {
    ++white[static_cast<size_t>(w.row)];
    auto low = state.lowest_black(w.column);
    if (low && *low < w.row) ++killed_from_below[static_cast<size_t>(w.row)];
  }
  for (const Cell& b : state.black()) ++black[static_cast<size_t>(b.row)];
  std::map<uint64_t, int> blackened;
  for (const Cell& c : state.blackened()) ++blackened[c.column];

  for (int i = 0; i < n; ++i) {
    const auto row = static_cast<size_t>(i);
    const uint64_t budget = BoardState::row_budget(i);
    if (white[row] != state.white_in_row(i) || black[row] != state.black_in_row(i)) {
      failures.push_back("row " + std::to_string(i) + ": cached counters disagree with recount");
    }
    if (white[row] > budget) failures.push_back("row " + std::to_string(i) + ": white over budget");
    if (state.params().black_row_budget && black[row] > budget) {
      failures.push_back("row " + std::to_string(i) + ": black over budget");
    }
    if (killed_from_below[row] > budget - 1) {
      failures.push_back("row " + std::to_string(i) + ": " +
                         std::to_string(killed_from_below[row]) +
                         " white pawns above black pawns exceeds 2^i - 1");
    }
  }
  if (blackened != state.blackened_per_column()) {
    failures.emplace_back("blackened counters disagree with recount");
  }
  for (const auto& [column, count] : blackened) {
    if (count > state.blacken_cap()) {
      failures.push_back("column " + std::to_string(column) + ": blacken cap exceeded");
    }
  }
  return failures;
}

MatchResult play_match(const BoardParams& params, BoardPlayer& white, BoardPlayer& black,
                       const MatchLimits& limits) {
  validate_limits(limits);
  MatchResult result{BoardState(params), Verdict::black_wins(), {}, {}};
  BoardState& state = result.final;
  MatchTrace& trace = result.trace;
  trace.game = "gn";
  trace.set_param("n", std::to_string(params.n));
  trace.set_param("white", white.name());
  trace.set_param("black", black.name());

  std::optional<Verdict> violation;
  // Rows whose pawns sit above a black pawn, maintained move by move; the
  // full recount runs at power-of-two move counts and at the end.
  std::vector<uint64_t> killed(static_cast<size_t>(params.n), 0);
  auto fail = [&](const std::string& what) {
    result.stats.invariant_failures.push_back("move " + std::to_string(state.move_index()) + ": " +
                                              what);
  };
  auto full_check = [&] {
    for (auto& f : check_board_invariants(state)) fail(f);
  };

  auto step = [&](Player who, BoardPlayer& player) -> Move {
    Move m = player.next_move(state);
    trace.records.push_back(format_board_record({state.move_index(), who, std::nullopt, m}));
    if (auto v = validate_move(state, who, m)) {
      violation = Verdict::violation(who, std::move(*v));
      return m;
    }
    const auto prev_low = state.lowest_black(m.cell.column);
    state.apply(who, m);
    ++result.stats.moves;
    if (m.is_pass()) return m;

    const Cell c = m.cell;
    const auto row = static_cast<size_t>(c.row);
    if (m.kind == MoveKind::PlaceWhite) {
      auto& low = result.stats.lowest_white_row;
      low = low ? std::min(*low, c.row) : c.row;
      if (state.white_in_row(c.row) > BoardState::row_budget(c.row)) fail("white over row budget");
      if (prev_low && *prev_low < c.row && ++killed[row] > BoardState::row_budget(c.row) - 1) {
        fail("row " + std::to_string(c.row) + ": too many white pawns above black pawns");
      }
    } else if (m.kind == MoveKind::PlaceBlack) {
      if (params.black_row_budget && state.black_in_row(c.row) > BoardState::row_budget(c.row)) {
        fail("black over row budget");
      }
      auto it = state.white().upper_bound(Cell{c.column, c.row});
      for (; it != state.white().end() && it->column == c.column; ++it) {
        if (prev_low && *prev_low < it->row) continue;
        const auto r = static_cast<size_t>(it->row);
        if (++killed[r] > BoardState::row_budget(it->row) - 1) {
          fail("row " + std::to_string(it->row) + ": too many white pawns above black pawns");
        }
      }
    } else if (state.blackened_in_column(c.column) > state.blacken_cap()) {
      fail("column " + std::to_string(c.column) + ": blacken cap exceeded");
    }
    const uint64_t k = state.move_index();
    if ((k & (k - 1)) == 0) full_check();
    return m;
  };

  int quiet = 0;
  while (state.move_index() < limits.max_moves) {
    Move wm = step(Player::White, white);
    if (violation || state.move_index() >= limits.max_moves) break;
    Move bm = step(Player::Black, black);
    if (violation) break;
    const bool quiet_round = wm.is_pass() && bm.is_pass() && white.idle() && black.idle();
    quiet = quiet_round ? quiet + 1 : 0;
    if (quiet >= limits.quiescence_rounds) {
      result.stats.quiescent = true;
      break;
    }
  }

  full_check();
  result.verdict = violation ? *violation : verdict(state);
  trace.footer = board_footer(state, result.verdict);
  return result;
}

}  // namespace kgame
