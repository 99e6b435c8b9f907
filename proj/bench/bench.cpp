// Parallel kernels against their serial reference versions.
#include <benchmark/benchmark.h>

#include "lcdvf/auto_init.hpp"
#include "lcdvf/distance_transform.hpp"
#include "lcdvf/field_ops.hpp"
#include "lcdvf/reference.hpp"
#include "lcdvf/shapes.hpp"
#include "lcdvf/vector_flow.hpp"

using namespace lcdvf;

namespace {

BinaryMask star(const benchmark::State& state) { return shapes::star(int(state.range(0))); }

void edt_brute_serial(benchmark::State& state) {
  const BinaryMask m = star(state);
  const auto b = boundary_pixels(m);
  for (auto _ : state) benchmark::DoNotOptimize(edt_brute(b, m.width(), m.height()));
}

void edt_exact_parallel(benchmark::State& state) {
  const BinaryMask m = star(state);
  const auto b = boundary_pixels(m);
  for (auto _ : state) benchmark::DoNotOptimize(edt_exact(b, m.width(), m.height()));
}

Contour polygon(const BinaryMask& m) {
  return circle_to_contour(circumscribed_circle(m), 200, m.width(), m.height());
}

void rasterize_brute_serial(benchmark::State& state) {
  const BinaryMask m = star(state);
  const Contour c = polygon(m);
  for (auto _ : state) benchmark::DoNotOptimize(reference::rasterize_brute(c, m.width(), m.height()));
}

void rasterize_scanline(benchmark::State& state) {
  const BinaryMask m = star(state);
  const Contour c = polygon(m);
  for (auto _ : state) benchmark::DoNotOptimize(rasterize(c, m.width(), m.height()));
}

void lcdvf_serial(benchmark::State& state) {
  const DistanceField dt = mask_to_dt(star(state));
  for (auto _ : state) benchmark::DoNotOptimize(reference::lcdvf_serial(dt));
}

void lcdvf_parallel(benchmark::State& state) {
  const DistanceField dt = mask_to_dt(star(state));
  for (auto _ : state) benchmark::DoNotOptimize(lcdvf::lcdvf(dt, kNoClip));
}

void gradient_serial(benchmark::State& state) {
  const DistanceField dt = mask_to_dt(star(state));
  for (auto _ : state) benchmark::DoNotOptimize(reference::central_gradient_serial(dt));
}

void gradient_parallel(benchmark::State& state) {
  const DistanceField dt = mask_to_dt(star(state));
  for (auto _ : state) benchmark::DoNotOptimize(central_gradient(dt));
}

}  // namespace

BENCHMARK(edt_brute_serial)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(edt_exact_parallel)->Arg(64)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(rasterize_brute_serial)->Arg(128)->Arg(512)->Unit(benchmark::kMicrosecond);
BENCHMARK(rasterize_scanline)->Arg(128)->Arg(512)->Unit(benchmark::kMicrosecond);
BENCHMARK(lcdvf_serial)->Arg(128)->Arg(512)->Unit(benchmark::kMicrosecond);
BENCHMARK(lcdvf_parallel)->Arg(128)->Arg(512)->Unit(benchmark::kMicrosecond);
BENCHMARK(gradient_serial)->Arg(128)->Arg(512)->Unit(benchmark::kMicrosecond);
BENCHMARK(gradient_parallel)->Arg(128)->Arg(512)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
