#include <benchmark/benchmark.h>

#include "henon/bottcher.hpp"
#include "henon/dynamics.hpp"
#include "henon/grid.hpp"
#include "henon/henon_map.hpp"

using namespace henon;

namespace {

HenonMap quad() {
  MakeOptions opts;
  opts.growth_samples = 200;
  return make_henon({HenonFactor{{1, 0}, {1, 0}, parse_polynomial("y^2")}}, opts);
}

HenonMap deg6() {
  MakeOptions opts;
  opts.growth_samples = 200;
  return make_henon({HenonFactor{{1, 0}, {1, 0}, parse_polynomial("y^2")},
                     HenonFactor{{2, 0}, {1, 0}, parse_polynomial("3*y^3")}},
                    opts);
}

void bm_apply(benchmark::State& state) {
  HenonMap H = deg6();
  Point2 z{{0.3, 0.1}, {0.7, -0.2}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(z = apply(H, z));
    if (std::abs(z.y) > 1e6) z = {{0.3, 0.1}, {0.7, -0.2}};
  }
}
BENCHMARK(bm_apply);

void bm_green(benchmark::State& state) {
  HenonMap H = quad();
  Point2 z{{0, 0}, {3, 3}};
  for (auto _ : state) benchmark::DoNotOptimize(green(H, z, Direction::forward, 1e-9, 100));
}
BENCHMARK(bm_green);

void bm_bottcher(benchmark::State& state) {
  HenonMap H = quad();
  Point2 z{{0, 0}, {25, 0}};
  for (auto _ : state) benchmark::DoNotOptimize(bottcher(H, z, Direction::forward, 1e-9));
}
BENCHMARK(bm_bottcher);

void bm_compose(benchmark::State& state) {
  HenonMap H = deg6();
  BiPolyPair comps = H.forward_components();
  for (auto _ : state) benchmark::DoNotOptimize(compose_maps(comps, comps, 100000));
}
BENCHMARK(bm_compose);

void bm_render(benchmark::State& state) {
  HenonMap H = quad();
  GridSpec spec;
  spec.res = static_cast<int>(state.range(0));
  spec.maxIter = 50;
  for (auto _ : state)
    benchmark::DoNotOptimize(render_green(H, spec, Direction::forward, 1e-6, 4));
}
BENCHMARK(bm_render)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
