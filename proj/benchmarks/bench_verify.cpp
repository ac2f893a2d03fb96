#include <benchmark/benchmark.h>

#include "essdim/cli.hpp"

using namespace essdim;

static void BM_VerifyGrid(benchmark::State &state) {
  const auto grid = cli::build_grid({"GL", "SL", "PSL"}, {2, 3, 5}, {3, 4, 5, 7, 8, 9},
                                    static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cli::run_verify(grid, std::uint64_t{1} << 20, 1).records.size());
  }
}
BENCHMARK(BM_VerifyGrid)->Arg(4)->Arg(6)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
