#include "spindec/grover.hpp"

#include <algorithm>
#include <thread>

namespace spindec {

namespace {

Vector ground_state() {
  Vector psi = Vector::Zero(4);
  psi[0] = 1.0;
  return psi;
}

}  // namespace

GroverResult run_noiseless(const GatePlan& plan, const SystemModel& m,
                           const Matrix& rho0) {
  validate_density_matrix(rho0);
  const Eigensystem es{m.energies, m.eigvecs};
  Matrix u = identity(4);
  for (const PlanStep& step : plan.steps) {
    if (step.kind == PlanStep::Kind::IdealGate) {
      u = step.gate * u;
    } else {
      u = propagator(es, step.duration) * u;
    }
  }
  GroverResult result;
  result.rho_final = u * rho0 * u.adjoint();
  result.success_prob = result.rho_final(k_grover_target, k_grover_target).real();
  result.f_rho = purity(result.rho_final);
  result.per_trace_purities = {result.f_rho};
  return result;
}

GroverResult run_noiseless(const GatePlan& plan, const SystemModel& m) {
  return run_noiseless(plan, m, density_from_state(ground_state()));
}

GroverResult run_noisy_ensemble(const GatePlan& plan, const SystemModel& m,
                                std::span<const NoiseTrace> traces,
                                const EvolutionConfig& cfg, int n_threads) {
  if (traces.empty()) {
    throw InvalidOperandError("run_noisy_ensemble: empty trace ensemble");
  }
  if (plan.mode != PlanMode::SegmentSnapped) {
    throw InvalidOperandError(
        "run_noisy_ensemble: noisy runs need a segment-aligned plan");
  }
  if (std::abs(cfg.tau - plan.tau) > 1e-15) {
    throw InvalidOperandError("run_noisy_ensemble: config tau differs from plan tau");
  }

  const Matrix rho_ref = run_noiseless(plan, m).rho_final;

  const std::size_t n_traces = traces.size();
  std::vector<Matrix> rhos(n_traces);
  std::vector<double> purities(n_traces);

  auto run_trace = [&](std::size_t k) {
    Vector psi = ground_state();
    TraceCursor cursor{&traces[k], 0};
    for (const PlanStep& step : plan.steps) {
      if (step.kind == PlanStep::Kind::IdealGate) {
        psi = step.gate * psi;
      } else {
        psi = trace_propagator(m, cfg, cursor, step.n_segments) * psi;
      }
    }
    const double norm2 = psi.squaredNorm();
    rhos[k] = density_from_state(psi);
    purities[k] = norm2 * norm2;
  };

  const int workers = std::max(1, n_threads);
  if (workers == 1 || n_traces < 2) {
    for (std::size_t k = 0; k < n_traces; ++k) run_trace(k);
  } else {
    // Static index ranges into per-trace slots: the reduction below is
    // ordered, so results are byte-identical for every thread count.
    std::vector<std::thread> pool;
    const std::size_t chunk = (n_traces + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::size_t lo = static_cast<std::size_t>(w) * chunk;
      const std::size_t hi = std::min(n_traces, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([&, lo, hi] {
        for (std::size_t k = lo; k < hi; ++k) run_trace(k);
      });
    }
    for (std::thread& t : pool) t.join();
  }

  GroverResult result;
  result.rho_final = ensemble_average(rhos);
  result.success_prob = result.rho_final(k_grover_target, k_grover_target).real();
  result.f_rho = overlap_fidelity(rho_ref, result.rho_final);
  result.per_trace_purities = std::move(purities);
  return result;
}

GroverResult run_redfield(const GatePlan& plan, const RedfieldGenerator& gen,
                          const Matrix& rho0) {
  const Matrix rho_ref = run_noiseless(plan, gen.system, rho0).rho_final;
  Matrix rho = rho0;
  for (const PlanStep& step : plan.steps) {
    if (step.kind == PlanStep::Kind::IdealGate) {
      rho = step.gate * rho * step.gate.adjoint();
    } else {
      rho = integrate(rho, gen, step.duration);
    }
  }
  GroverResult result;
  result.rho_final = rho;
  // The solver's transient negativity can push a diagonal element a hair
  // outside [0,1]; the reported scalar is clipped, the state never is.
  result.success_prob =
      std::clamp(rho(k_grover_target, k_grover_target).real(), 0.0, 1.0);
  result.f_rho = overlap_fidelity(rho_ref, rho);
  result.per_trace_purities = {purity(rho)};
  return result;
}

GroverResult run_redfield(const GatePlan& plan, const RedfieldGenerator& gen) {
  return run_redfield(plan, gen, density_from_state(ground_state()));
}

}  // namespace spindec
