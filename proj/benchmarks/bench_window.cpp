#include <benchmark/benchmark.h>

#include "tess/generators.hpp"
#include "tess/window_stats.hpp"

namespace {

// Full pipeline: clip, walk the windowed graph, census, identities,
// estimators, residuals.
void BM_WindowPipeline(benchmark::State& state) {
  const double r = static_cast<double>(state.range(0));
  const tess::Window w{{0.0, 0.0}, r};
  const auto g = tess::poisson_lines(1.0, w, 5.0, 42);
  const auto raw = tess::extract_faces(tess::embed(g));
  const auto refs = tess::face_reference_points(raw);
  for (auto _ : state) {
    const auto wa = tess::analyze_window(g, raw, refs, w);
    const auto est = tess::estimate(wa.counts);
    const auto res = tess::validate_formulas(est, wa.counts);
    benchmark::DoNotOptimize(res.residuals.size());
  }
}
BENCHMARK(BM_WindowPipeline)->Arg(4)->Arg(8)->Arg(16);

}  // namespace
