#include <benchmark/benchmark.h>

#include "slablens/field_eval.hpp"
#include "slablens/spectrum.hpp"
#include "slablens/time_domain.hpp"

using namespace slablens;

namespace {

const Frequency kW = Frequency::from_hz(1e10);
const SlabGeometry kGeom(0.5 * kW.wavelength(), kW.wavelength());

void BM_TransmissionCoefficient(benchmark::State& state) {
  const MaterialResponse m{{-1.0, 1e-8}, {-1.0, 1e-8}};
  double h = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(t_te(kW, h * kW.k0(), m, kGeom.L()));
    h = h > 6.0 ? 0.0 : h + 1e-3;
  }
}
BENCHMARK(BM_TransmissionCoefficient);

void BM_EvaluateField(benchmark::State& state) {
  QuadratureSpec spec;
  spec.h_max = 3.0 * kW.k0();
  spec.rel_tol = 1e-10;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        evaluate_field(kW, 0.1 * kW.wavelength(), 2.1 * kW.wavelength(), kGeom, ConstantLossyDNG{1e-6}, spec));
  }
}
BENCHMARK(BM_EvaluateField)->Unit(benchmark::kMillisecond);

void BM_SpectrumW(benchmark::State& state) {
  OmegaGridConfig cfg;
  cfg.n_points = static_cast<int>(state.range(0));
  cfg.halfwidth_high = 1e-3;
  const auto grid = build_omega_grid(1.5, kW, cfg);
  const DispersiveDNG model{kW.omega(), 4.0, 1000.0};
  const SineWindow window{1e-3, kW.omega()};
  const double z = 2.001 * kW.wavelength();
  for (auto _ : state) {
    benchmark::DoNotOptimize(analytic_spectrum_W(1.5 * kW.k0(), z, 1e-5, kGeom, model, window, grid));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SpectrumW)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
