#include "kgame/arena.hpp"

#include <algorithm>
#include <stdexcept>

#include "kgame/record_format.hpp"

namespace kgame {

namespace {

Rational cell_weight(int row) { return pow2_neg(row); }

struct ColumnWeights {
  Rational killed{0};
  Rational dead{0};
};

ColumnWeights column_weights(const BoardState& b, uint64_t column) {
  ColumnWeights w;
  const auto low = b.lowest_black(column);
  auto it = b.white().lower_bound(Cell{column, 0});
  for (; it != b.white().end() && it->column == column; ++it) {
    if (low && *low < it->row) {
      w.killed += cell_weight(it->row);
      w.dead += cell_weight(it->row);
    } else if (b.blackened().contains(*it)) {
      w.dead += cell_weight(it->row);
    }
  }
  return w;
}

}  // namespace

std::string_view to_string(ArenaVariant variant) {
  return variant == ArenaVariant::Plain ? "plain" : "prefix";
}

std::optional<ArenaVariant> arena_variant_from_string(std::string_view text) {
  if (text == "plain") return ArenaVariant::Plain;
  if (text == "prefix") return ArenaVariant::Prefix;
  return std::nullopt;
}

void validate_params(const ArenaParams& params) {
  if (params.n_min < 1 || params.n_min > params.n_max || params.n_max > kMaxBoardRows) {
    throw std::invalid_argument("arena range must satisfy 1 <= n_min <= n_max <= " +
                                std::to_string(kMaxBoardRows) + ", got [" +
                                std::to_string(params.n_min) + ", " +
                                std::to_string(params.n_max) + "]");
  }
}

ArenaState::ArenaState(ArenaParams params) : params_(params) {
  validate_params(params_);
  for (int n = params_.n_min; n <= params_.n_max; ++n) {
    boards_.emplace(n, BoardState(BoardParams{n, params_.variant == ArenaVariant::Plain}));
  }
  global_black_per_row_.assign(static_cast<size_t>(params_.n_max), 0);
}

void ArenaState::apply(int board, Player player, const Move& move) {
  if (auto v = arena_validate(*this, board, player, move)) throw RuleError(player, std::move(*v));
  boards_.at(board).apply(player, move);
  if (move.kind == MoveKind::PlaceBlack) {
    ++global_black_per_row_[static_cast<size_t>(move.cell.row)];
    global_black_weight_ += cell_weight(move.cell.row);
  }
  ++actions_;
}

ArenaState new_arena(ArenaParams params) { return ArenaState(params); }

std::optional<Violation> arena_validate(const ArenaState& state, int board, Player player,
                                        const Move& move) {
  if (!state.has_board(board)) {
    return Violation{Reason::OffBoard, "no board G_" + std::to_string(board) + " in the arena"};
  }
  if (auto v = validate_move(state.board(board), player, move)) return v;
  if (move.kind != MoveKind::PlaceBlack) return std::nullopt;

  const int row = move.cell.row;
  if (state.params().variant == ArenaVariant::Plain) {
    if (state.global_black_in_row(row) >= BoardState::row_budget(row)) {
      return Violation{Reason::GlobalRowBudget,
                       "row " + std::to_string(row) + " already holds " +
                           std::to_string(state.global_black_in_row(row)) +
                           " black pawns over all boards"};
    }
  } else if (state.global_black_weight() + cell_weight(row) >= 1) {
    return Violation{Reason::KraftBudget, "black weight " +
                                              format_rational(state.global_black_weight()) +
                                              " plus 2^-" + std::to_string(row) + " reaches 1"};
  }
  return std::nullopt;
}

ArenaState arena_apply(const ArenaState& state, int board, Player player, const Move& move) {
  ArenaState next = state;
  next.apply(board, player, move);
  return next;
}

SemicomputableArenaBlack::SemicomputableArenaBlack(const ArenaParams& params)
    : SemicomputableArenaBlack(
          params, semicomputable_lab_config(
                      {params.n_min, params.n_max},
                      params.variant == ArenaVariant::Plain ? PawnSource::Plain
                                                            : PawnSource::Prefix)) {}

SemicomputableArenaBlack::SemicomputableArenaBlack(const ArenaParams& params, LabConfig config)
    : range_{params.n_min, params.n_max},
      source_(params.variant == ArenaVariant::Plain ? PawnSource::Plain : PawnSource::Prefix),
      table_(std::move(config)) {}

std::vector<BoardAction> SemicomputableArenaBlack::next_actions(const ArenaState&) {
  if (table_.saturated()) return {};
  dovetail_stage(table_);
  return semicomputable_black_actions(table_, range_, source_);
}

std::vector<BoardAction> GreedyArenaBlack::next_actions(const ArenaState& state) {
  std::vector<BoardAction> out;
  for (const auto& [n, b] : state.boards()) {
    std::optional<Cell> target;
    const auto& order = b.white_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (!is_dead(b, *it)) {
        target = *it;
        break;
      }
    }
    if (!target) continue;
    Move blacken = Move::blacken(*target);
    if (!arena_validate(state, n, Player::Black, blacken)) {
      out.push_back({n, blacken});
      continue;
    }
    for (int r = target->row - 1; r >= 0; --r) {
      Move place = Move::place_black(Cell{target->column, r});
      if (!arena_validate(state, n, Player::Black, place)) {
        out.push_back({n, place});
        break;
      }
    }
  }
  // Earlier placements in the batch may use up a shared row budget; keep
  // only what stays legal in sequence.
  ArenaState scratch = state;
  std::vector<BoardAction> legal;
  for (const auto& a : out) {
    if (arena_validate(scratch, a.board, Player::Black, a.move)) continue;
    scratch.apply(a.board, Player::Black, a.move);
    legal.push_back(a);
  }
  return legal;
}

std::unique_ptr<ArenaAdversary> make_arena_black(std::string_view name,
                                                 const ArenaParams& params) {
  if (name == "semicomputable") return std::make_unique<SemicomputableArenaBlack>(params);
  if (name == "greedy") return std::make_unique<GreedyArenaBlack>();
  throw std::invalid_argument("unknown arena adversary '" + std::string(name) + "'");
}

Rational alive_white_weight_bound(const ArenaParams& params) {
  Rational sum = 0;
  for (int n = params.n_min; n <= params.n_max; ++n) sum += pow2_neg(white_floor_row(n));
  return sum;
}

Rational unkilled_white_weight_bound(const ArenaParams& params) {
  Rational sum = 0;
  for (int n = params.n_min; n <= params.n_max; ++n) sum += 2 * pow2_neg(white_floor_row(n));
  return sum;
}

uint64_t plain_white_row_bound(const ArenaParams& params, int row) {
  uint64_t boards = 0;
  for (int n = params.n_min; n <= params.n_max; ++n) {
    if (white_floor_row(n) <= row && row < n) ++boards;
  }
  return (BoardState::row_budget(row) - 1) + boards;
}

std::vector<std::string> check_arena_invariants(const ArenaState& state) {
  std::vector<std::string> failures;
  const auto& p = state.params();
  std::vector<uint64_t> black(static_cast<size_t>(p.n_max), 0);
  std::vector<uint64_t> white(static_cast<size_t>(p.n_max), 0);
  Rational weight = 0;
  for (const auto& [n, b] : state.boards()) {
    for (auto& f : check_board_invariants(b)) failures.push_back("G_" + std::to_string(n) + ": " + f);
    for (const Cell& c : b.black()) {
      ++black[static_cast<size_t>(c.row)];
      weight += cell_weight(c.row);
    }
    for (const Cell& c : b.white()) ++white[static_cast<size_t>(c.row)];
  }
  if (black != state.global_black_per_row() || weight != state.global_black_weight()) {
    failures.emplace_back("global black counters disagree with recount");
  }
  for (int i = 0; i < p.n_max; ++i) {
    const auto row = static_cast<size_t>(i);
    if (p.variant == ArenaVariant::Plain) {
      if (black[row] > BoardState::row_budget(i)) {
        failures.push_back("row " + std::to_string(i) + ": global black budget exceeded");
      }
      if (white[row] > plain_white_row_bound(p, i)) {
        failures.push_back("row " + std::to_string(i) + ": " + std::to_string(white[row]) +
                           " white pawns exceeds " + std::to_string(plain_white_row_bound(p, i)));
      }
    }
  }
  if (p.variant == ArenaVariant::Prefix && weight >= 1) {
    failures.push_back("black weight " + format_rational(weight) + " is not below 1");
  }
  return failures;
}

std::vector<std::string> arena_footer(const ArenaState& state, const std::map<int, Verdict>& verdicts,
                                      const std::optional<Verdict>& violation) {
  std::vector<std::string> out;
  bool all_white = true;
  for (const auto& [n, v] : verdicts) {
    // format_verdict starts with "verdict "; keep the rest.
    out.push_back("@" + std::to_string(n) + " " + format_verdict(v).substr(8));
    all_white = all_white && v.outcome == Outcome::WhiteWins;
  }
  out.push_back("global black=" + join_counts(state.global_black_per_row()) +
                " weight=" + format_rational(state.global_black_weight()));
  if (violation) {
    out.push_back("outcome " + format_verdict(*violation).substr(8));
  } else {
    out.push_back(all_white ? "outcome AllWhiteWins" : "outcome BlackWinsSomewhere");
  }
  return out;
}

ArenaResult run_arena(const ArenaParams& params, ArenaAdversary& black,
                      const MatchLimits& limits) {
  validate_limits(limits);
  ArenaResult result{ArenaState(params), {}, std::nullopt, {}, {}};
  ArenaState& state = result.final;
  ArenaStats& stats = result.stats;
  stats.white_per_row.assign(static_cast<size_t>(params.n_max), 0);

  MatchTrace& trace = result.trace;
  trace.game = "arena";
  trace.set_param("n_min", std::to_string(params.n_min));
  trace.set_param("n_max", std::to_string(params.n_max));
  trace.set_param("variant", std::string(to_string(params.variant)));
  trace.set_param("white", "standard");
  trace.set_param("black", black.name());

  std::map<int, WhiteMemory> memories;
  std::map<std::pair<int, uint64_t>, ColumnWeights> by_column;
  const Rational alive_bound = alive_white_weight_bound(params);
  const Rational unkilled_bound = unkilled_white_weight_bound(params);
  Rational white_weight = 0;

  auto act = [&](int n, Player who, const Move& m) -> bool {
    trace.records.push_back(format_board_record({state.actions(), who, n, m}));
    if (auto v = arena_validate(state, n, who, m)) {
      ++stats.rejections;
      result.violation = Verdict::violation(who, std::move(*v));
      return false;
    }
    state.apply(n, who, m);
    if (m.kind == MoveKind::PlaceWhite) {
      ++stats.white_per_row[static_cast<size_t>(m.cell.row)];
      white_weight += cell_weight(m.cell.row);
      const int margin = m.cell.row - white_floor_row(n);
      auto& low = stats.lowest_white_row_margin;
      low = low ? std::min(*low, margin) : margin;
    }
    const auto key = std::make_pair(n, m.cell.column);
    ColumnWeights& col = by_column[key];
    stats.killed_white_weight -= col.killed;
    stats.dead_white_weight -= col.dead;
    col = column_weights(state.board(n), m.cell.column);
    stats.killed_white_weight += col.killed;
    stats.dead_white_weight += col.dead;
    stats.alive_white_weight = white_weight - stats.dead_white_weight;
    stats.max_killed_white_weight =
        std::max(stats.max_killed_white_weight, stats.killed_white_weight);
    stats.max_dead_white_weight = std::max(stats.max_dead_white_weight, stats.dead_white_weight);
    stats.max_alive_white_weight =
        std::max(stats.max_alive_white_weight, stats.alive_white_weight);

    const std::string at = "action " + std::to_string(state.actions()) + ": ";
    if (params.variant == ArenaVariant::Prefix) {
      if (stats.killed_white_weight >= 1) {
        stats.invariant_failures.push_back(at + "killed white weight " +
                                           format_rational(stats.killed_white_weight) +
                                           " is not below 1");
      }
      if (stats.alive_white_weight > alive_bound) {
        stats.invariant_failures.push_back(at + "alive white weight " +
                                           format_rational(stats.alive_white_weight) +
                                           " exceeds the per-board bound");
      }
      if (white_weight - stats.killed_white_weight > unkilled_bound) {
        stats.invariant_failures.push_back(at + "unkilled white weight " +
                                           format_rational(white_weight -
                                                           stats.killed_white_weight) +
                                           " exceeds the per-board bound");
      }
    }
    for (auto& f : check_board_invariants(state.board(n))) {
      stats.invariant_failures.push_back(at + "G_" + std::to_string(n) + ": " + f);
    }
    const int row = m.cell.row;
    if (params.variant == ArenaVariant::Plain) {
      if (m.kind == MoveKind::PlaceWhite &&
          stats.white_per_row[static_cast<size_t>(row)] > plain_white_row_bound(params, row)) {
        stats.invariant_failures.push_back(at + "white row " + std::to_string(row) +
                                           " total over bound");
      }
      if (m.kind == MoveKind::PlaceBlack &&
          state.global_black_in_row(row) > BoardState::row_budget(row)) {
        stats.invariant_failures.push_back(at + "global black row budget exceeded");
      }
    } else if (state.global_black_weight() >= 1) {
      stats.invariant_failures.push_back(at + "black weight reached 1");
    }
    return true;
  };

  int quiet = 0;
  bool stop = false;
  while (!stop && state.actions() < limits.max_moves) {
    ++stats.rounds;
    bool moved = false;
    for (int n = params.n_min; n <= params.n_max && !stop; ++n) {
      auto [m, mem] = white_next_move(state.board(n), memories[n]);
      memories[n] = std::move(mem);
      if (m.is_pass()) continue;
      moved = true;
      stop = !act(n, Player::White, m) || state.actions() >= limits.max_moves;
    }
    if (stop) break;
    for (const auto& a : black.next_actions(state)) {
      moved = moved || !a.move.is_pass();
      if (a.move.is_pass()) continue;
      if (!act(a.board, Player::Black, a.move) || state.actions() >= limits.max_moves) {
        stop = true;
        break;
      }
    }
    quiet = (!moved && black.idle()) ? quiet + 1 : 0;
    if (quiet >= limits.quiescence_rounds) {
      stats.quiescent = true;
      break;
    }
  }

  stats.actions = state.actions();
  for (const auto& [n, b] : state.boards()) result.verdicts.emplace(n, verdict(b));
  trace.footer = arena_footer(state, result.verdicts, result.violation);
  return result;
}

}  // namespace kgame
