#include "spindec/gates.hpp"

#include <cmath>

namespace spindec {

namespace {

PlanStep ideal(const Matrix& gate, std::string name) {
  PlanStep step;
  step.kind = PlanStep::Kind::IdealGate;
  step.gate = gate;
  step.name = std::move(name);
  return step;
}

PlanStep evolution(int n_segments, double duration, double comp_phi,
                   std::string name) {
  PlanStep step;
  step.kind = PlanStep::Kind::Evolution;
  step.name = std::move(name);
  step.n_segments = n_segments;
  step.duration = duration;
  step.comp_phi = comp_phi;
  return step;
}

}  // namespace

Matrix hadamard() {
  Matrix w(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  w << s, s, s, -s;
  return w;
}

Matrix w2_gate() { return kron(identity(2), hadamard()); }

Matrix w12_gate() { return kron(hadamard(), hadamard()); }

Matrix phase00_gate() {
  Matrix p = Matrix::Zero(4, 4);
  p(0, 0) = -1;
  p(1, 1) = 1;
  p(2, 2) = 1;
  p(3, 3) = -1;
  return p;
}

Matrix phase_inversion(int basis_index) {
  if (basis_index < 0 || basis_index > 3) {
    throw InvalidOperandError("phase_inversion: basis index out of range");
  }
  Matrix p = identity(4);
  p(basis_index, basis_index) = -1;
  return p;
}

GatePlan build_gate_plan(const SystemModel& m, const CnotCalibration& cal,
                         PlanMode mode, double tau) {
  if (cal.fidelity < 0.999) {
    throw CalibrationError("build_gate_plan: calibration fidelity below 0.999");
  }
  if (m.params.label == SystemLabel::Custom && mode == PlanMode::SegmentSnapped) {
    throw InvalidOperandError(
        "build_gate_plan: no segment preset for custom systems; use the "
        "exact-calibrated mode");
  }

  GatePlan plan;
  plan.system = m.params.label;
  plan.mode = mode;
  plan.tau = tau;

  // Block durations: system I realizes the second controlled inversion with a
  // triple-length evolution (CNOT^3); system II repeats the single CNOT.
  int seg1 = 0;
  int seg2 = 0;
  double t1 = 0.0;
  double t2 = 0.0;
  if (mode == PlanMode::SegmentSnapped) {
    if (m.params.label == SystemLabel::SystemI) {
      seg1 = 20;
      seg2 = 60;
    } else {
      seg1 = 40;
      seg2 = 40;
    }
    t1 = seg1 * tau;
    t2 = seg2 * tau;
  } else {
    t1 = cal.t_c;
    t2 = m.params.label == SystemLabel::SystemI ? 3.0 * cal.t_c : cal.t_c;
  }
  const double phi1 = optimal_phase(m, t1).phi;
  const double phi2 = optimal_phase(m, t2).phi;

  const Matrix w2 = w2_gate();
  const Matrix w12 = w12_gate();
  plan.steps.push_back(ideal(w12, "W12 prep"));
  plan.steps.push_back(ideal(w2, "W2"));
  plan.steps.push_back(evolution(seg1, t1, phi1, "entangling block 1"));
  plan.steps.push_back(ideal(rz1(-phi1), "Rz1 compensation 1"));
  plan.steps.push_back(ideal(w2, "W2"));
  plan.steps.push_back(ideal(w12, "W12"));
  plan.steps.push_back(ideal(w2, "W2"));
  plan.steps.push_back(evolution(seg2, t2, phi2, "entangling block 2"));
  plan.steps.push_back(ideal(rz1(-phi2), "Rz1 compensation 2"));
  plan.steps.push_back(ideal(w2, "W2"));
  plan.steps.push_back(ideal(phase00_gate(), "phase00"));
  plan.steps.push_back(ideal(w12, "W12 final"));

  plan.total_duration = t1 + t2;
  plan.total_segments = seg1 + seg2;
  return plan;
}

GatePlan build_ideal_plan(int marked) {
  GatePlan plan;
  plan.system = SystemLabel::Custom;
  plan.mode = PlanMode::ExactCalibrated;
  const Matrix w12 = w12_gate();
  plan.steps.push_back(ideal(w12, "W12 prep"));
  plan.steps.push_back(ideal(phase_inversion(marked), "oracle"));
  plan.steps.push_back(ideal(w12, "W12"));
  plan.steps.push_back(ideal(phase_inversion(0), "phase00"));
  plan.steps.push_back(ideal(w12, "W12 final"));
  return plan;
}

std::array<Vector, 36> product_input_states() {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex i{0.0, 1.0};
  std::array<Vector, 6> single;
  for (Vector& v : single) v = Vector(2);
  single[0] << 1, 0;
  single[1] << 0, 1;
  single[2] << s, s;
  single[3] << s, -s;
  single[4] << s, s * i;
  single[5] << s, -s * i;

  std::array<Vector, 36> inputs;
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      Vector v(4);
      for (int p = 0; p < 2; ++p) {
        for (int q = 0; q < 2; ++q) {
          v[2 * p + q] = single[static_cast<std::size_t>(a)][p] *
                         single[static_cast<std::size_t>(b)][q];
        }
      }
      inputs[static_cast<std::size_t>(6 * a + b)] = v;
    }
  }
  return inputs;
}

}  // namespace spindec
