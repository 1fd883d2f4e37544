#include <gtest/gtest.h>

#include "kgame/record_format.hpp"
#include "kgame/strategies.hpp"
#include "oracles.hpp"

namespace kgame {
namespace {

Cell at(uint64_t c, int r) { return Cell{c, r}; }

MatchLimits quick() { return MatchLimits{100000, 2}; }

TEST(WhiteStrategy, FreshBoardTopOfFirstColumn) {
  auto [m, mem] = white_next_move(BoardState(BoardParams{4}), WhiteMemory{});
  EXPECT_EQ(m, Move::place_white(at(0, 3)));
  EXPECT_EQ(mem.current_column, 0u);
}

TEST(WhiteStrategy, BlackenedPawnStepsDown) {
  BoardState s(BoardParams{4});
  auto [m1, mem] = white_next_move(s, WhiteMemory{});
  s.apply(Player::White, m1);
  EXPECT_EQ(white_next_move(s, mem).first, Move::pass());
  s.apply(Player::Black, Move::blacken(at(0, 3)));
  EXPECT_EQ(white_next_move(s, mem).first, Move::place_white(at(0, 2)));
  // Skips a further blackened cell.
  BoardState t = s;
  t.apply(Player::Black, Move::blacken(at(0, 2)));
  EXPECT_EQ(white_next_move(t, mem).first, Move::place_white(at(0, 1)));
}

TEST(WhiteStrategy, KilledPawnSkipsColumnsHoldingBlack) {
  BoardState s(BoardParams{4});
  auto [m1, mem] = white_next_move(s, WhiteMemory{});
  s.apply(Player::White, m1);
  s.apply(Player::Black, Move::place_black(at(1, 0)));
  s.apply(Player::Black, Move::place_black(at(0, 2)));
  auto [m2, mem2] = white_next_move(s, mem);
  EXPECT_EQ(m2, Move::place_white(at(2, 3)));
  EXPECT_EQ(mem2.columns_visited, (std::vector<uint64_t>{0, 2}));
}

TEST(WhiteStrategy, NewColumnStartsBelowBlackenedTop) {
  BoardState s(BoardParams{4});
  auto [m1, mem] = white_next_move(s, WhiteMemory{});
  s.apply(Player::White, m1);
  s.apply(Player::Black, Move::blacken(at(1, 3)));
  s.apply(Player::Black, Move::place_black(at(0, 0)));
  EXPECT_EQ(white_next_move(s, mem).first, Move::place_white(at(1, 2)));
}

TEST(WhiteStrategy, FloorRow) {
  EXPECT_EQ(white_floor_row(1), 0);
  EXPECT_EQ(white_floor_row(2), 0);
  EXPECT_EQ(white_floor_row(3), 1);
  EXPECT_EQ(white_floor_row(4), 1);
  EXPECT_EQ(white_floor_row(5), 2);
  EXPECT_EQ(white_floor_row(16), 7);
}

TEST(GreedyKiller, BlackensThenPlacesBelow) {
  StandardWhite white;
  GreedyKiller greedy;
  auto r = play_match(BoardParams{4}, white, greedy, quick());
  ASSERT_GE(r.trace.records.size(), 2u);
  EXPECT_EQ(parse_board_record(r.trace.records[1]).move, Move::blacken(at(0, 3)));
  // Column 0 takes floor(4/2) = 2 blackenings, then a pawn below.
  std::vector<Move> black;
  for (const auto& line : r.trace.records) {
    auto rec = parse_board_record(line);
    if (rec.player == Player::Black) black.push_back(rec.move);
  }
  ASSERT_GE(black.size(), 3u);
  EXPECT_EQ(black[1], Move::blacken(at(0, 2)));
  EXPECT_EQ(black[2].kind, MoveKind::PlaceBlack);
  EXPECT_EQ(black[2].cell.column, 0u);
  EXPECT_LT(black[2].cell.row, 1);
  EXPECT_EQ(r.verdict.outcome, Outcome::WhiteWins);
}

TEST(Adversaries, PassWhenNothingIsLegal) {
  // n = 1: the only black pawn is spent and nothing may be blackened.
  BoardState s(BoardParams{1});
  s.apply(Player::White, Move::place_white(at(0, 0)));
  s.apply(Player::Black, Move::place_black(at(1, 0)));
  s.apply(Player::White, Move::pass());
  GreedyKiller greedy;
  BudgetExhauster exhauster;
  EXPECT_EQ(greedy.next_move(s), Move::pass());
  EXPECT_EQ(exhauster.next_move(s), Move::pass());
  for (uint64_t seed = 0; seed < 20; ++seed) {
    RandomBlack random(seed);
    EXPECT_EQ(random.next_move(s), Move::pass());
  }
}

TEST(PlayMatch, SilentBlack) {
  StandardWhite white;
  ScriptedPlayer black({});
  auto r = play_match(BoardParams{4}, white, black, quick());
  ASSERT_EQ(r.verdict.outcome, Outcome::WhiteWins);
  EXPECT_EQ(r.verdict.witnesses, (std::vector<Cell>{at(0, 3)}));
  EXPECT_TRUE(r.stats.quiescent);
}

TEST(PlayMatch, IllegalBlackEndsMatch) {
  StandardWhite white;
  ScriptedPlayer black({Move::place_black(at(5, 0)), Move::place_black(at(6, 0))});
  auto r = play_match(BoardParams{4}, white, black, quick());
  ASSERT_EQ(r.verdict.outcome, Outcome::RuleViolation);
  EXPECT_EQ(r.verdict.culprit, Player::Black);
  EXPECT_EQ(r.verdict.reason, Reason::RowBudgetBlack);
}

TEST(PlayMatch, IllegalWhiteNamesWhite) {
  ScriptedPlayer white({Move::place_white(at(0, 0)), Move::place_white(at(1, 0))});
  ScriptedPlayer black({});
  auto r = play_match(BoardParams{3}, white, black, quick());
  ASSERT_EQ(r.verdict.outcome, Outcome::RuleViolation);
  EXPECT_EQ(r.verdict.culprit, Player::White);
  EXPECT_EQ(r.verdict.reason, Reason::RowBudgetWhite);
}

TEST(PlayMatch, MaxMovesStopsEarly) {
  StandardWhite white;
  GreedyKiller black;
  auto r = play_match(BoardParams{8}, white, black, MatchLimits{5, 2});
  EXPECT_EQ(r.stats.moves, 5u);
  EXPECT_FALSE(r.stats.quiescent);
  EXPECT_THROW(play_match(BoardParams{8}, white, black, MatchLimits{0, 2}),
               std::invalid_argument);
  EXPECT_THROW(play_match(BoardParams{8}, white, black, MatchLimits{5, 0}),
               std::invalid_argument);
}

// Replays a match, asking the reference strategy for White's move at every
// White turn, and checks the position against the reference rules.
void check_against_reference(const MatchResult& r, int n) {
  oracle::Board ob;
  ob.n = n;
  oracle::WhiteState ws;
  for (const auto& line : r.trace.records) {
    auto rec = parse_board_record(line);
    oracle::Action a{oracle::Act::Pass, rec.move.cell};
    switch (rec.move.kind) {
      case MoveKind::PlaceWhite: a.kind = oracle::Act::White; break;
      case MoveKind::PlaceBlack: a.kind = oracle::Act::Black; break;
      case MoveKind::Blacken: a.kind = oracle::Act::Blacken; break;
      case MoveKind::Pass: break;
    }
    if (rec.player == Player::White) {
      oracle::Action expected = oracle::white_move(ob, ws);
      ASSERT_EQ(static_cast<int>(expected.kind), static_cast<int>(a.kind)) << line;
      if (a.kind == oracle::Act::White) {
        ASSERT_EQ(expected.cell, a.cell) << line;
        ASSERT_GE(a.cell.row, white_floor_row(n)) << line;
      }
    }
    ASSERT_TRUE(oracle::legal(ob, a)) << line;
    oracle::play(ob, a);
  }
  EXPECT_EQ(r.final.white(), ob.white);
  EXPECT_EQ(r.final.black(), ob.black);
  EXPECT_EQ(r.final.blackened(), ob.blackened);
  // Pawns with a black pawn strictly below: at most 2^i - 1 in row i.
  for (int i = 0; i < n; ++i) {
    uint64_t killed = 0;
    for (const Cell& w : ob.white) killed += (w.row == i && ob.black_below(w)) ? 1 : 0;
    EXPECT_LE(killed, BoardState::row_budget(i) - 1);
  }
}

TEST(PlayMatch, StandardWhiteMatchesReferenceAgainstRandomBlack) {
  for (int n = 1; n <= 10; ++n) {
    for (uint64_t seed = 0; seed < 25; ++seed) {
      StandardWhite white;
      RandomBlack black(seed * 131 + static_cast<uint64_t>(n));
      auto r = play_match(BoardParams{n}, white, black, quick());
      ASSERT_EQ(r.verdict.outcome, Outcome::WhiteWins) << "n=" << n << " seed=" << seed;
      EXPECT_TRUE(r.stats.invariant_failures.empty());
      check_against_reference(r, n);
    }
  }
}

TEST(PlayMatch, StandardWhiteMatchesReferenceAgainstDeterministicBlacks) {
  for (int n = 1; n <= 9; ++n) {
    for (const char* name : {"greedy", "exhauster"}) {
      StandardWhite white;
      auto black = make_black(name, n, 0);
      auto r = play_match(BoardParams{n}, white, *black, quick());
      ASSERT_EQ(r.verdict.outcome, Outcome::WhiteWins) << name << " n=" << n;
      EXPECT_TRUE(r.stats.invariant_failures.empty()) << name;
      check_against_reference(r, n);
    }
  }
}

TEST(PlayMatch, Deterministic) {
  for (const char* name : {"random", "greedy", "exhauster"}) {
    StandardWhite w1, w2;
    auto b1 = make_black(name, 7, 42);
    auto b2 = make_black(name, 7, 42);
    auto r1 = play_match(BoardParams{7}, w1, *b1, quick());
    auto r2 = play_match(BoardParams{7}, w2, *b2, quick());
    EXPECT_EQ(serialize(r1.trace), serialize(r2.trace)) << name;
  }
}

TEST(CheckBoardInvariants, BlackenedPawnsAreNotCountedAsKilled) {
  // Two dead pawns in row 1 of G_2, but only one has a black pawn below.
  BoardState s(BoardParams{2});
  s.apply(Player::White, Move::place_white(at(0, 1)));
  s.apply(Player::Black, Move::place_black(at(0, 0)));
  s.apply(Player::White, Move::place_white(at(1, 1)));
  s.apply(Player::Black, Move::blacken(at(1, 1)));
  EXPECT_TRUE(check_board_invariants(s).empty());
}

TEST(SemicomputableBlack, BlackensRowZeroFromTheEmptyProgram) {
  // The empty program prints the empty string, which encodes 0, so
  // C(0|x) = 0 < log 4 - 1 for every x of length 4.
  ApproxTable table(semicomputable_lab_config({4, 4}, PawnSource::Plain));
  dovetail_stage(table);
  auto actions = semicomputable_black_actions(table, {4, 4}, PawnSource::Plain);
  std::set<uint64_t> columns;
  for (const auto& a : actions) {
    EXPECT_EQ(a.board, 4);
    if (a.move.kind == MoveKind::Blacken) {
      EXPECT_EQ(a.move.cell.row, 0);
      columns.insert(a.move.cell.column);
    }
  }
  EXPECT_EQ(columns.size(), 16u);
  // Re-discoveries never blacken twice.
  while (!table.saturated()) {
    dovetail_stage(table);
    for (const auto& a : semicomputable_black_actions(table, {4, 4}, PawnSource::Plain)) {
      EXPECT_NE(a.move.kind, MoveKind::Blacken);
    }
  }
}

TEST(SemicomputableBlack, ActionsMatchDiscoveries) {
  const BoardRange range{3, 8};
  ApproxTable table(semicomputable_lab_config(range, PawnSource::Plain));
  std::set<std::pair<int, Cell>> placed, blackened;
  while (!table.saturated()) {
    dovetail_stage(table);
    for (const auto& a : semicomputable_black_actions(table, range, PawnSource::Plain)) {
      ASSERT_TRUE(range.contains(a.board));
      auto& seen = a.move.kind == MoveKind::PlaceBlack ? placed : blackened;
      EXPECT_TRUE(seen.insert({a.board, a.move.cell}).second);
    }
  }
  // Reference: a pawn at (x, i) exactly when some unconditional plain
  // program of length i < |x| printing x was an improving discovery.
  std::set<std::pair<int, Cell>> expect;
  for (const auto& rec : table.discovered()) {
    if (!rec.condition.empty() || rec.discipline != Discipline::Plain) continue;
    const int n = static_cast<int>(rec.output.size());
    if (!range.contains(n) || rec.program.size() >= rec.output.size()) continue;
    expect.insert({n, Cell{*rec.output.value(), static_cast<int>(rec.program.size())}});
  }
  EXPECT_EQ(placed, expect);
  EXPECT_FALSE(placed.empty());
  // Blackening respects floor(log2 n) - 1 and the blacken cap.
  std::map<std::pair<int, uint64_t>, int> per_column;
  for (const auto& [n, c] : blackened) {
    EXPECT_LT(c.row, n);
    EXPECT_LE(++per_column[std::make_pair(n, c.column)], n / 2);
  }
}

TEST(SemicomputableBlack, SingleBoardMatchIsLegal) {
  for (int n = 4; n <= 8; ++n) {
    StandardWhite white;
    SemicomputableBlack black(n);
    auto r = play_match(BoardParams{n}, white, black, MatchLimits{1'000'000, 2});
    ASSERT_NE(r.verdict.outcome, Outcome::RuleViolation) << r.verdict.detail;
    EXPECT_EQ(r.verdict.outcome, Outcome::WhiteWins);
    EXPECT_TRUE(r.stats.invariant_failures.empty());
    EXPECT_TRUE(black.table().saturated());
  }
}

TEST(MakeBlack, UnknownName) {
  EXPECT_THROW(make_black("nobody", 4, 0), std::invalid_argument);
}

}  // namespace
}  // namespace kgame
