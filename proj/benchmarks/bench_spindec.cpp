#include <benchmark/benchmark.h>

#include "spindec/grover.hpp"
#include "spindec/redfield.hpp"

#include <vector>

namespace {

using namespace spindec;

const SystemModel& model_i() {
  static const SystemModel m = build_system_model(system_i_params());
  return m;
}

const SystemModel& model_ii() {
  static const SystemModel m = build_system_model(system_ii_params());
  return m;
}

Reservoir r1() {
  static const Reservoir r = reservoir_presets(model_i(), model_ii())[0];
  return r;
}

EvolutionConfig noisy_cfg(Method method) {
  EvolutionConfig cfg;
  cfg.method = method;
  cfg.alpha_hz = 25.0;
  cfg.coupling = coupling_in_energy_basis(model_i(), CouplingKind::Z2);
  return cfg;
}

GatePlan plan_i() {
  return build_gate_plan(model_i(), CnotCalibration{6.1447e-3, 0.0019, 0.999998});
}

void SegmentPropagatorExact(benchmark::State& state) {
  const EvolutionConfig cfg = noisy_cfg(Method::Exact);
  double s = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(segment_propagator(model_i(), cfg, s));
    s = -s;
  }
}
BENCHMARK(SegmentPropagatorExact);

void SegmentPropagatorSplitStep(benchmark::State& state) {
  const EvolutionConfig cfg = noisy_cfg(Method::SplitStep);
  double s = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(segment_propagator(model_i(), cfg, s));
    s = -s;
  }
}
BENCHMARK(SegmentPropagatorSplitStep);

void GenerateTrace(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_trace(r1(), n, k_default_tau, seed++));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(GenerateTrace)->Arg(80)->Arg(2048);

void PeriodogramEnsemble(benchmark::State& state) {
  const auto traces = generate_ensemble(r1(), 80, k_default_tau, 3, 256);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_psd(traces));
  }
}
BENCHMARK(PeriodogramEnsemble);

void RedfieldGeneratorBuild(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        build_redfield_generator(model_i(), CouplingKind::Z2, r1(), 63.66));
  }
}
BENCHMARK(RedfieldGeneratorBuild);

void RedfieldIntegrateBlock(benchmark::State& state) {
  const RedfieldGenerator gen =
      build_redfield_generator(model_i(), CouplingKind::Z2, r1(), 63.66);
  const Vector psi = (Vector(4) << 0.5, 0.5, 0.5, 0.5).finished();
  const Matrix rho0 = density_from_state(psi);
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(rho0, gen, 6.0876e-3));
  }
}
BENCHMARK(RedfieldIntegrateBlock);

void GroverSingleTrace(benchmark::State& state) {
  const GatePlan plan = plan_i();
  const auto traces = generate_ensemble(r1(), plan.total_segments, plan.tau, 9, 1);
  EvolutionConfig cfg = noisy_cfg(Method::Exact);
  cfg.tau = plan.tau;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_noisy_ensemble(plan, model_i(), traces, cfg));
  }
}
BENCHMARK(GroverSingleTrace);

void GroverEnsemble256(benchmark::State& state) {
  const GatePlan plan = plan_i();
  const auto traces = generate_ensemble(r1(), plan.total_segments, plan.tau, 9, 256);
  EvolutionConfig cfg = noisy_cfg(Method::Exact);
  cfg.tau = plan.tau;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_noisy_ensemble(plan, model_i(), traces, cfg));
  }
  state.SetItemsProcessed(state.iterations() * 256);
}
BENCHMARK(GroverEnsemble256);

void CalibrationScanWindow(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(calibrate_cnot(model_i(), 5.9e-3, 6.3e-3, 0.999));
  }
}
BENCHMARK(CalibrationScanWindow);

}  // namespace

BENCHMARK_MAIN();
