#include <benchmark/benchmark.h>

#include "tess/faces.hpp"
#include "tess/generators.hpp"

namespace {

void BM_ExtractFaces(benchmark::State& state) {
  const double r = static_cast<double>(state.range(0));
  const auto g = tess::poisson_lines(1.0, {{0.0, 0.0}, r}, 5.0, 42);
  for (auto _ : state) {
    auto fs = tess::extract_faces(tess::embed(g));
    benchmark::DoNotOptimize(fs.faces.data());
    state.counters["faces"] = static_cast<double>(fs.faces.size());
  }
}
BENCHMARK(BM_ExtractFaces)->Arg(4)->Arg(8)->Arg(16);

void BM_FaceLocator(benchmark::State& state) {
  const auto g = tess::poisson_lines(1.0, {{0.0, 0.0}, 8.0}, 5.0, 42);
  const auto fs = tess::extract_faces(tess::embed(g));
  const tess::FaceLocator loc(fs);
  double x = -7.0, y = -7.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(loc.locate({x, y}));
    x += 0.37;
    if (x > 7.0) {
      x = -7.0;
      y += 0.29;
      if (y > 7.0) y = -7.0;
    }
  }
}
BENCHMARK(BM_FaceLocator);

}  // namespace
