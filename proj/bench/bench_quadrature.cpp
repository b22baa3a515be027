// Serial reference vs OpenMP QMC on the smeared Hadamard integrand.

#include <benchmark/benchmark.h>

#include "wedgebell/quadrature.hpp"

namespace {

using namespace wedgebell;

UnitIntegrand hadamard_integrand() {
  static const WedgeBumpParams f{WedgeSide::Right, 1.0, 2.5, 1.0};
  static const WedgeBumpParams g{WedgeSide::Left, 0.7, 3.0, 1.0};
  static const Rectangle bf = bounding_box(f), bg = bounding_box(g);
  return [](std::span<const double> u) {
    const Event1p1 x{bf.t_min + u[0] * (bf.t_max - bf.t_min), bf.x_min + u[1] * (bf.x_max - bf.x_min)};
    const Event1p1 y{bg.t_min + u[2] * (bg.t_max - bg.t_min), bg.x_min + u[3] * (bg.x_max - bg.x_min)};
    const double w = evaluate(f, x) * evaluate(g, y);
    return w == 0.0 ? 0.0 : w * hadamard_or_zero(x - y, Mass(0.01), KernelConvention::Paper);
  };
}

void BM_QmcSerial(benchmark::State& state) {
  const auto f = hadamard_integrand();
  QuadConfig cfg{QuadMethod::QuasiMonteCarlo, static_cast<std::uint64_t>(state.range(0)), 1e-3, 7};
  for (auto _ : state) benchmark::DoNotOptimize(integrate_qmc_serial(f, 4, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_QmcOpenMP(benchmark::State& state) {
  const auto f = hadamard_integrand();
  QuadConfig cfg{QuadMethod::QuasiMonteCarlo, static_cast<std::uint64_t>(state.range(0)), 1e-3, 7};
  for (auto _ : state) benchmark::DoNotOptimize(integrate_qmc(f, 4, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_WeylRow1(benchmark::State& state) {
  // Only the self product of f' to keep a single iteration short.
  const WedgeBumpParams fp{WedgeSide::Right, 4.88226, 29.6709, 2.13737};
  QuadConfig cfg{QuadMethod::QuasiMonteCarlo, static_cast<std::uint64_t>(state.range(0)), 1e-3, 0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(hadamard_inner(fp, fp, Mass(0.0105), KernelConvention::Paper, cfg));
  }
}

}  // namespace

BENCHMARK(BM_QmcSerial)->Arg(1 << 16)->Arg(1 << 18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QmcOpenMP)->Arg(1 << 16)->Arg(1 << 18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WeylRow1)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
