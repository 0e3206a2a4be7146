#include <benchmark/benchmark.h>

#include "tess/generators.hpp"
#include "tess/planarize.hpp"

namespace {

// Crossing-heavy input: planarization cost is dominated by intersection
// discovery and node clustering.
void BM_PlanarizePoissonLines(benchmark::State& state) {
  const double r = static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto g = tess::poisson_lines(1.0, {{0.0, 0.0}, r}, 5.0, 42);
    benchmark::DoNotOptimize(g.links.data());
    state.counters["links"] = static_cast<double>(g.links.size());
  }
}
BENCHMARK(BM_PlanarizePoissonLines)->Arg(4)->Arg(8)->Arg(16);

void BM_PlanarizeLeaves(benchmark::State& state) {
  const double r = static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto g = tess::falling_leaves({}, {{0.0, 0.0}, r}, 42);
    benchmark::DoNotOptimize(g.links.data());
    state.counters["links"] = static_cast<double>(g.links.size());
  }
}
BENCHMARK(BM_PlanarizeLeaves)->Arg(4)->Arg(8);

}  // namespace
