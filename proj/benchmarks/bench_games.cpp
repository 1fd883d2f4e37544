#include <benchmark/benchmark.h>

#include "kgame/arena.hpp"
#include "kgame/strategies.hpp"
#include "kgame/trace.hpp"
#include "kgame/verify.hpp"
#include "kgame/weight_players.hpp"

using namespace kgame;

static void BM_PlayMatchGreedy(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    StandardWhite white;
    GreedyKiller black;
    benchmark::DoNotOptimize(play_match(BoardParams{n, true}, white, black, MatchLimits{}));
  }
}
BENCHMARK(BM_PlayMatchGreedy)->Arg(8)->Arg(16);

static void BM_PlayMatchExhauster(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    StandardWhite white;
    BudgetExhauster black;
    benchmark::DoNotOptimize(play_match(BoardParams{n, true}, white, black, MatchLimits{}));
  }
}
BENCHMARK(BM_PlayMatchExhauster)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_ExhaustiveN2(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(exhaustive_black_search(BoardParams{2, true}, MatchLimits{}));
  }
}
BENCHMARK(BM_ExhaustiveN2);

static void BM_ArenaGreedy(benchmark::State& state) {
  const ArenaParams p{1, static_cast<int>(state.range(0)),
                      state.range(1) ? ArenaVariant::Prefix : ArenaVariant::Plain};
  for (auto _ : state) {
    GreedyArenaBlack black;
    benchmark::DoNotOptimize(run_arena(p, black, MatchLimits{}));
  }
}
BENCHMARK(BM_ArenaGreedy)->Args({12, 0})->Args({12, 1})->Unit(benchmark::kMillisecond);

static void BM_WeightMatch(benchmark::State& state) {
  const WeightParams p{static_cast<uint64_t>(state.range(0)),
                       std::vector<uint64_t>(state.range(0) == 1 ? 16 : 256, 4 * state.range(0))};
  for (auto _ : state) {
    AliceStrategy alice;
    GreedyDisabler bob;
    benchmark::DoNotOptimize(play_weight_match(p, alice, bob, WeightLimits{}));
  }
}
BENCHMARK(BM_WeightMatch)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_VerifyTrace(benchmark::State& state) {
  StandardWhite white;
  BudgetExhauster black;
  const std::string text =
      serialize(play_match(BoardParams{10, true}, white, black, MatchLimits{}).trace);
  for (auto _ : state) benchmark::DoNotOptimize(verify_trace_text(text));
  state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_VerifyTrace);
