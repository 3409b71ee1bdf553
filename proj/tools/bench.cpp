#include <benchmark/benchmark.h>

#include "hve/nondeg.hpp"
#include "hve/solve.hpp"

using namespace hve;

namespace {

std::vector<GridCell> grid() {
  std::vector<GridCell> cells;
  for (unsigned n = 1; n <= 6; ++n)
    for (unsigned k = 1; k <= 8; ++k) cells.push_back({n, k});
  return cells;
}

void BM_nondeg_grid_serial(benchmark::State& st) {
  auto cells = grid();
  for (auto _ : st) benchmark::DoNotOptimize(nondeg_grid_serial(cells, Convention::Base));
}

void BM_nondeg_grid_parallel(benchmark::State& st) {
  auto cells = grid();
  for (auto _ : st) benchmark::DoNotOptimize(nondeg_grid(cells, Convention::Base, static_cast<int>(st.range(0))));
}

void BM_s1_table_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(s1_table_serial(12));
}

void BM_s1_table_parallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(s1_table(12, static_cast<int>(st.range(0))));
}

void BM_analyze(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(analyze_eigenvalue(3, 4, static_cast<int>(st.range(0))));
}

}  // namespace

BENCHMARK(BM_nondeg_grid_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_nondeg_grid_parallel)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_s1_table_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_s1_table_parallel)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_analyze)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
