#include <benchmark/benchmark.h>

#include "essdim/classical.hpp"
#include "essdim/formulas.hpp"
#include "essdim/mackey.hpp"
#include "essdim/wreath.hpp"

using namespace essdim;

static void BM_EssentialDimension(benchmark::State &state) {
  const Family f{FamilyTag::PSL};
  for (auto _ : state) {
    for (std::uint64_t n = 2; n <= 64; ++n) {
      benchmark::DoNotOptimize(essential_dimension(f, n, 7, 1, 3).value);
    }
  }
}
BENCHMARK(BM_EssentialDimension);

static void BM_ClosureGL(benchmark::State &state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const Family f{FamilyTag::GL};
  const auto gens = gf::sylow_generators(f, n, 7, 1, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gf::closure_order(gens.all(), gens.scalars, 1 << 20).order);
  }
}
BENCHMARK(BM_ClosureGL)->Arg(3)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_WreathConstruct(benchmark::State &state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(make_group(3, 1, m, WreathVariant::GL).order());
  }
}
BENCHMARK(BM_WreathConstruct)->Arg(3)->Arg(6)->Arg(9);

static void BM_Center(benchmark::State &state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto g = make_group(3, 1, m, WreathVariant::SL);
  for (auto _ : state) benchmark::DoNotOptimize(center(g).rank);
}
BENCHMARK(BM_Center)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_MinFaithfulDim(benchmark::State &state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto g = make_group(2, 2, m, WreathVariant::SL);
  for (auto _ : state) benchmark::DoNotOptimize(min_faithful_dim(g).dim);
}
BENCHMARK(BM_MinFaithfulDim)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
