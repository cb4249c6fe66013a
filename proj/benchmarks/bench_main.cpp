#include <benchmark/benchmark.h>

#include "uq/demand.hpp"
#include "uq/fixtures.hpp"
#include "uq/schemes.hpp"

using namespace uq;

namespace {

std::vector<Region> regions_for(std::size_t n) {
  const Fixture fx = gen_random(1, n, 2, 1.0);
  const Configuration cfg = configuration_at(fx.scenario, 0.0);
  std::vector<Region> r;
  for (std::size_t i = 0; i < n; ++i)
    r.push_back(Region{cfg.centers[i], cfg.rho + 0.4 * (i % 5), false});
  return r;
}

void bm_degree(benchmark::State& state) {
  const auto r = regions_for(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(degree(build_pe_graph(r)).delta);
}
BENCHMARK(bm_degree)->Arg(20)->Arg(100);

void bm_ply_2d(benchmark::State& state) {
  const auto r = regions_for(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ply(r, 2).ply);
}
BENCHMARK(bm_ply_2d)->Arg(20)->Arg(60);

void bm_thickness(benchmark::State& state) {
  const auto r = regions_for(static_cast<std::size_t>(state.range(0)));
  const PEGraph g = build_pe_graph(r);
  for (auto _ : state) benchmark::DoNotOptimize(thickness(g).chi);
}
BENCHMARK(bm_thickness)->Arg(16)->Arg(60);

void bm_phi_integral(benchmark::State& state) {
  const Fixture fx =
      gen_random(2, static_cast<std::size_t>(state.range(0)), 2, 1.0, true, 4.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(phi_integral(fx.scenario, 8, 0.0, 4.0));
}
BENCHMARK(bm_phi_integral)->Arg(12)->Arg(24);

void bm_fwrr(benchmark::State& state) {
  const Fixture fx =
      gen_random(3, static_cast<std::size_t>(state.range(0)), 2, 1.0);
  const Configuration cfg0 = configuration_at(fx.scenario, 0.0);
  SchemeConfig sc;
  sc.x = 8;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_fwrr(cfg0, sc, 50.0).trace.events.size());
}
BENCHMARK(bm_fwrr)->Arg(20)->Arg(40);

void bm_bucket_refined(benchmark::State& state) {
  const Fixture fx =
      gen_random(4, static_cast<std::size_t>(state.range(0)), 2, 1.0, true, 3.0);
  SchemeConfig sc;
  sc.x = 8;
  const WarmStart warm = oracle_init(fx.scenario, 0.5);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        run_bucket(fx.scenario, sc, BucketMode::refined, warm, 3.0)
            .trace.events.size());
}
BENCHMARK(bm_bucket_refined)->Arg(12)->Arg(24);

}  // namespace

BENCHMARK_MAIN();
