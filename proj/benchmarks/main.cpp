#include <benchmark/benchmark.h>

// libbenchmark_main is not always built with a matching LTO toolchain.
BENCHMARK_MAIN();
