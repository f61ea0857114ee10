// Parallel evaluate_on_box against the serial pointwise reference.

#include "hlmax/maxop.hpp"
#include "hlmax/verify.hpp"

#include <benchmark/benchmark.h>

using namespace hlmax;

namespace {

BallSpec spec_of(int which) {
  switch (which) {
    case 0: return {Geometry::CenteredInterval, 1};
    case 1: return {Geometry::UncenteredInterval, 1};
    case 2: return {Geometry::CenteredL1, 2};
    default: return {Geometry::UncenteredCube, 2};
  }
}

std::int64_t radius_of(int which) { return which < 2 ? 4000 : 40; }

void BM_Parallel(benchmark::State& state) {
  const auto spec = spec_of(static_cast<int>(state.range(0)));
  const auto f = random_gridfn(11, spec.dim, 6, 4, 16);
  const Box box = Box::cube(spec.dim, radius_of(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_on_box(f, spec, box));
  state.SetLabel(std::string(geometry_name(spec.geometry)));
}

void BM_Reference(benchmark::State& state) {
  const auto spec = spec_of(static_cast<int>(state.range(0)));
  const auto f = random_gridfn(11, spec.dim, 6, 4, 16);
  const Box box = Box::cube(spec.dim, radius_of(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_on_box_reference(f, spec, box));
  state.SetLabel(std::string(geometry_name(spec.geometry)));
}

}  // namespace

BENCHMARK(BM_Parallel)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Reference)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
