#include <gtest/gtest.h>

#include "kgame/lab.hpp"
#include "kgame/strategies.hpp"
#include "oracles.hpp"

namespace kgame {
namespace {

TEST(Exhaustive, OneRowIsForcedWin) {
  auto r = exhaustive_black_search(BoardParams{1}, MatchLimits{});
  EXPECT_EQ(r.worst.outcome, Outcome::WhiteWins);
  EXPECT_EQ(r.lowest_white_row, 0);
}

// The reduced search and the unreduced reference agree on the verdict and
// on how low White ever has to go.
TEST(Exhaustive, AgreesWithUnreducedSearch) {
  for (int n = 1; n <= 2; ++n) {
    auto reduced = exhaustive_black_search(BoardParams{n}, MatchLimits{});
    auto naive = oracle::naive_search(n);
    EXPECT_EQ(reduced.worst.outcome == Outcome::WhiteWins, naive.white_always_wins) << n;
    EXPECT_TRUE(naive.white_always_wins) << n;
    ASSERT_TRUE(reduced.lowest_white_row.has_value());
    EXPECT_EQ(*reduced.lowest_white_row, naive.lowest_white_row) << n;
    EXPECT_LE(reduced.distinct_positions, naive.positions) << n;
  }
}

TEST(Exhaustive, NodeBudget) {
  EXPECT_THROW(exhaustive_black_search(BoardParams{3}, MatchLimits{}, 1000), ResourceLimitError);
}

}  // namespace
}  // namespace kgame
