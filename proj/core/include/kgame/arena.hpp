#pragma once

// All boards G_n for n in [n_min, n_max] played at once. White plays her
// column strategy independently on every board. Black's pawns are budgeted
// globally: in the Plain variant row i holds at most 2^i black pawns summed
// over all boards; in the Prefix variant the per-row budgets are dropped and
// the black pawns' total weight, sum of 2^-row, must stay below 1.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgame/board.hpp"
#include "kgame/lab.hpp"
#include "kgame/rational.hpp"
#include "kgame/strategies.hpp"
#include "kgame/trace.hpp"

namespace kgame {

enum class ArenaVariant { Plain, Prefix };

std::string_view to_string(ArenaVariant variant);
std::optional<ArenaVariant> arena_variant_from_string(std::string_view text);

struct ArenaParams {
  int n_min = 1;
  int n_max = 1;
  ArenaVariant variant = ArenaVariant::Plain;
};

// Throws std::invalid_argument unless 1 <= n_min <= n_max <= kMaxBoardRows.
void validate_params(const ArenaParams& params);

class ArenaState {
 public:
  explicit ArenaState(ArenaParams params);

  const ArenaParams& params() const { return params_; }
  const std::map<int, BoardState>& boards() const { return boards_; }
  const BoardState& board(int n) const { return boards_.at(n); }
  bool has_board(int n) const { return boards_.contains(n); }

  uint64_t global_black_in_row(int row) const {
    return global_black_per_row_.at(static_cast<size_t>(row));
  }
  const std::vector<uint64_t>& global_black_per_row() const { return global_black_per_row_; }
  const Rational& global_black_weight() const { return global_black_weight_; }
  uint64_t actions() const { return actions_; }

  void apply(int board, Player player, const Move& move);

 private:
  ArenaParams params_;
  std::map<int, BoardState> boards_;
  std::vector<uint64_t> global_black_per_row_;
  Rational global_black_weight_{0};
  uint64_t actions_ = 0;
};

ArenaState new_arena(ArenaParams params);

// Per-board rules first (OffBoard for a board outside the range), then the
// variant's global budget for black pawns.
std::optional<Violation> arena_validate(const ArenaState& state, int board, Player player,
                                        const Move& move);

// Copying form; throws RuleError.
ArenaState arena_apply(const ArenaState& state, int board, Player player, const Move& move);

class ArenaAdversary {
 public:
  virtual ~ArenaAdversary() = default;
  virtual std::vector<BoardAction> next_actions(const ArenaState& state) = 0;
  virtual bool idle() const { return true; }
  virtual std::string name() const = 0;
};

// Runs one lab stage per round and emits every action the stage induces.
// Pawns come from plain programs in the Plain variant and from prefix-free
// programs in the Prefix variant.
class SemicomputableArenaBlack : public ArenaAdversary {
 public:
  explicit SemicomputableArenaBlack(const ArenaParams& params);
  SemicomputableArenaBlack(const ArenaParams& params, LabConfig config);
  std::vector<BoardAction> next_actions(const ArenaState& state) override;
  bool idle() const override { return table_.saturated(); }
  std::string name() const override { return "semicomputable"; }
  const ApproxTable& table() const { return table_; }

 private:
  BoardRange range_;
  PawnSource source_;
  ApproxTable table_;
};

// On every board, attacks White's most recent alive pawn as GreedyKiller
// does, skipping anything the global budget forbids.
class GreedyArenaBlack : public ArenaAdversary {
 public:
  std::vector<BoardAction> next_actions(const ArenaState& state) override;
  std::string name() const override { return "greedy"; }
};

std::unique_ptr<ArenaAdversary> make_arena_black(std::string_view name,
                                                 const ArenaParams& params);

// Sum over n in range of 2^-(ceil(n/2) - 1).
Rational alive_white_weight_bound(const ArenaParams& params);

// Sum over n in range of 2^-(ceil(n/2) - 2): every white pawn that is not
// killed sits in White's current column at or above her floor row.
Rational unkilled_white_weight_bound(const ArenaParams& params);

// (2^i - 1) + number of boards whose White strategy can reach row i.
uint64_t plain_white_row_bound(const ArenaParams& params, int row);

struct ArenaStats {
  uint64_t rounds = 0;
  uint64_t actions = 0;
  bool quiescent = false;
  uint64_t rejections = 0;
  std::vector<uint64_t> white_per_row;  // totals over all boards
  // Killed: a black pawn sits strictly below. Dead adds blackened pawns.
  // Only the killed weight is bounded by the black weight; blackened pawns
  // in White's current columns are covered by the per-board bound instead.
  Rational killed_white_weight{0};
  Rational dead_white_weight{0};
  Rational alive_white_weight{0};
  Rational max_killed_white_weight{0};
  Rational max_dead_white_weight{0};
  Rational max_alive_white_weight{0};
  std::optional<int> lowest_white_row_margin;  // min over boards of row - floor row
  std::vector<std::string> invariant_failures;
};

struct ArenaResult {
  ArenaState final;
  std::map<int, Verdict> verdicts;
  std::optional<Verdict> violation;  // set when the run stopped on an illegal action
  MatchTrace trace;
  ArenaStats stats;
};

// Each round White moves on every board in ascending n (passes are not
// recorded), then the adversary's batch is applied in order. The run ends
// after limits.quiescence_rounds silent rounds with an idle adversary, at
// limits.max_moves actions, or at the first illegal action.
ArenaResult run_arena(const ArenaParams& params, ArenaAdversary& black, const MatchLimits& limits);

// Every invariant of the position that does not need history.
std::vector<std::string> check_arena_invariants(const ArenaState& state);

// "@<n> <verdict>" per board, "global black=<row counts> weight=<num/den>",
// then "outcome AllWhiteWins | BlackWinsSomewhere | RuleViolation <P> <R>".
std::vector<std::string> arena_footer(const ArenaState& state, const std::map<int, Verdict>& verdicts,
                                      const std::optional<Verdict>& violation);

}  // namespace kgame
