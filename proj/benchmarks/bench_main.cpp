#include <benchmark/benchmark.h>

#include "diffmix/flows.hpp"
#include "diffmix/grid.hpp"
#include "diffmix/mixing.hpp"
#include "diffmix/profiles.hpp"
#include "diffmix/spectra.hpp"

using namespace diffmix;

namespace {

Field gaussian_derivative(const SpectralGrid& g) {
  return Field::sample(g, [](double x) { return -0.5 * x * std::exp(-x * x / 4.0); });
}

}  // namespace

static void BM_derivative(benchmark::State& state) {
  const auto g = make_grid(40.0, static_cast<std::size_t>(state.range(0)));
  const Field f = gaussian_derivative(g);
  for (auto _ : state) benchmark::DoNotOptimize(derivative(f, 2));
}
BENCHMARK(BM_derivative)->Arg(1024)->Arg(8192);

static void BM_burgers_flow(benchmark::State& state) {
  const auto g = make_grid(40.0, 1024);
  const Field b0 = f_star(BurgersParams::from_amplitude(1.0), g);
  for (auto _ : state) benchmark::DoNotOptimize(burgers_flow(b0, 4.0));
}
BENCHMARK(BM_burgers_flow);

static void BM_linflow_rep(benchmark::State& state) {
  const auto g = make_grid(40.0, 1024);
  const Field b0 = f_star(BurgersParams::from_amplitude(1.0), g);
  const Field a0 = gaussian_derivative(g);
  for (auto _ : state) benchmark::DoNotOptimize(linflow_rep(b0, a0, 4.0));
}
BENCHMARK(BM_linflow_rep);

static void BM_rg_step(benchmark::State& state) {
  RGConfig cfg;
  cfg.params = BurgersParams::with_smallness(2.0, 0.5);
  cfg.half_width = 40.0;
  cfg.n_points = 1024;
  cfg.perturbation = Perturbation::cubic_flux;
  cfg.eps0 = 0.1;
  const RGState s = init_data(cfg, default_perturbation(cfg));
  for (auto _ : state) benchmark::DoNotOptimize(rg_step(s, cfg));
}
BENCHMARK(BM_rg_step)->Unit(benchmark::kMillisecond);

static void BM_eigencurves(benchmark::State& state) {
  const RDSystem sys = RDSystem::lambda_omega(1.0, 1.0);
  const int modes = static_cast<int>(state.range(0));
  const WaveTrain wt = solve_wavetrain(sys, 0.2, lambda_omega_ansatz(1.0, 1.0, 0.2, modes));
  const auto xi = symmetric_xi_grid(0.1, 17);
  for (auto _ : state) benchmark::DoNotOptimize(eigencurves(wt, sys, xi, 1));
}
BENCHMARK(BM_eigencurves)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
