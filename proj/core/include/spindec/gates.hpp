#pragma once

#include "spindec/propagation.hpp"
#include "spindec/system.hpp"

#include <array>
#include <string>
#include <vector>

// Grover gate plans: the calibrated timing/phase schedule realizing one
// Grover iteration on two qubits with the marked state |11>.
//
// Circuit (time order, applied left to right from |00>):
//   W12, [W2, E1, Rz1(-phi_1), W2], W12, [W2, E2, Rz1(-phi_2), W2],
//   PHASE00 = diag(-1,1,1,-1), W12
// where E1/E2 are finite-duration two-qubit evolutions realizing CNOT
// (system I: CNOT then CNOT^3; system II: CNOT twice) and the bracketed
// sandwiches are the controlled phase inversions. Single-qubit gates are
// ideal and instantaneous.

namespace spindec {

Matrix hadamard();   // single-qubit W
Matrix w2_gate();    // I (x) W
Matrix w12_gate();   // W (x) W
Matrix phase00_gate();
// Phase inversion of one computational basis state, I_{|x>}.
Matrix phase_inversion(int basis_index);

struct PlanStep {
  enum class Kind { IdealGate, Evolution };
  Kind kind = Kind::IdealGate;
  // IdealGate
  Matrix gate;
  std::string name;
  // Evolution
  int n_segments = 0;     // 0 for non-segment-aligned (exact-duration) blocks
  double duration = 0.0;  // seconds
  double comp_phi = 0.0;  // residual Rz1 phase compensated right after
};

enum class PlanMode {
  SegmentSnapped,   // block durations are whole noise segments (80 total)
  ExactCalibrated,  // block durations at the calibrated optimum
};

struct GatePlan {
  SystemLabel system = SystemLabel::Custom;
  PlanMode mode = PlanMode::SegmentSnapped;
  std::vector<PlanStep> steps;
  double tau = k_default_tau;
  double total_duration = 0.0;  // seconds
  int total_segments = 0;       // 0 in ExactCalibrated mode

  // Whole-plan unitary with every evolution replaced by its ideal-limit gate
  // (exact C_e at the block's compensated phase). Used by noiseless runs.
  // Kept out: noisy/Redfield engines walk the steps themselves.
};

// Builds the preset plan for the calibrated system. System I: 20- and
// 60-segment blocks (6.0876 / 18.263 ms); system II: two 40-segment blocks
// (12.175 ms each); ExactCalibrated instead uses (t_c, 3 t_c) and (t_c, t_c).
// Each block's compensation phase is re-optimized at the block duration.
// Throws CalibrationError if cal.fidelity < 0.999, and InvalidOperandError
// for label Custom with SegmentSnapped mode (no segment preset exists).
GatePlan build_gate_plan(const SystemModel& m, const CnotCalibration& cal,
                         PlanMode mode = PlanMode::SegmentSnapped,
                         double tau = k_default_tau);

// All-ideal-gate plan (exact CNOTs, zero duration) marking an arbitrary
// basis state; marked = 3 is the standard |11> search.
GatePlan build_ideal_plan(int marked = 3);

// The 36 product inputs built from the 6 single-qubit states
// {|0>, |1>, (|0>+-|1>)/sqrt2, (|0>+-i|1>)/sqrt2}.
std::array<Vector, 36> product_input_states();

inline constexpr int k_grover_target = 3;  // |11>

}  // namespace spindec
