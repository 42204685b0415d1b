#pragma once

#include "spindec/gates.hpp"
#include "spindec/noise.hpp"
#include "spindec/propagation.hpp"
#include "spindec/redfield.hpp"
#include "spindec/system.hpp"

#include <span>
#include <vector>

// Runs the assembled Grover plan in three modes: noiseless reference,
// Monte-Carlo noisy ensemble (per-trace pure evolution, then averaging), and
// Redfield (evolution blocks integrated by the master equation).

namespace spindec {

struct GroverResult {
  Matrix rho_final;
  double success_prob = 0.0;  // population of the marked state |11>
  double f_rho = 0.0;         // overlap with the noiseless reference
  std::vector<double> per_trace_purities;
};

// alpha = 0 evolution of the plan from rho0; the f_rho reference.
GroverResult run_noiseless(const GatePlan& plan, const SystemModel& m,
                           const Matrix& rho0);
GroverResult run_noiseless(const GatePlan& plan, const SystemModel& m);

// Per-trace pure-state evolution from |00>, one trace per run spanning all
// evolution blocks, ensemble-averaged. f_rho is computed against the alpha=0
// reference of the same plan. Deterministic for fixed traces, independent of
// n_threads (indexed slots, ordered reduction). Requires a SegmentSnapped
// plan and traces with at least total_segments samples (TraceExhaustedError).
GroverResult run_noisy_ensemble(const GatePlan& plan, const SystemModel& m,
                                std::span<const NoiseTrace> traces,
                                const EvolutionConfig& cfg, int n_threads = 1);

// Same plan with evolution blocks integrated by the Redfield generator; ideal
// gates applied in the computational basis, eigenbasis transforms at block
// boundaries (handled inside integrate()).
GroverResult run_redfield(const GatePlan& plan, const RedfieldGenerator& gen,
                          const Matrix& rho0);
GroverResult run_redfield(const GatePlan& plan, const RedfieldGenerator& gen);

}  // namespace spindec
