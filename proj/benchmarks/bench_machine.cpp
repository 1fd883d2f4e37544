#include <benchmark/benchmark.h>

#include "kgame/lab.hpp"
#include "kgame/machine.hpp"

using namespace kgame;

// Literal programs: the cost is one step per output bit.
static void BM_RunLiteral(benchmark::State& state) {
  const auto len = static_cast<int>(state.range(0));
  const BitString x = BitString::from_value(0x5a5a5a5a5a5aULL & ((uint64_t{1} << len) - 1), len);
  const BitString p = literal_program(x, Discipline::PrefixFree);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_program(Discipline::PrefixFree, p, BitString(), 1 << 20));
  }
}
BENCHMARK(BM_RunLiteral)->Arg(8)->Arg(32);

// Every program of one length, as a dovetail stage sees them.
static void BM_RunAllPrograms(benchmark::State& state) {
  const auto len = static_cast<int>(state.range(0));
  const auto programs = all_strings(len);
  for (auto _ : state) {
    uint64_t halted = 0;
    for (const auto& p : programs) halted += run_program(Discipline::Plain, p, BitString(), 64).halted();
    benchmark::DoNotOptimize(halted);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(programs.size()));
}
BENCHMARK(BM_RunAllPrograms)->Arg(10)->Arg(14);

static void BM_DovetailToLimit(benchmark::State& state) {
  LabConfig c;
  c.max_len = static_cast<int>(state.range(0));
  c.cond_max_len = 6;
  c.conditions = {BitString::parse("1"), BitString::parse("0110")};
  for (auto _ : state) {
    ApproxTable t(c);
    run_to_limit(t);
    benchmark::DoNotOptimize(t.kraft_accum());
  }
}
BENCHMARK(BM_DovetailToLimit)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
