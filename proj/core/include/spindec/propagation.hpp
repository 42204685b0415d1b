#pragma once

#include "spindec/noise.hpp"
#include "spindec/system.hpp"

#include <span>
#include <vector>

// Time evolution under the noisy total Hamiltonian
//   H(t) = H_s + pi alpha s(t) A        (alpha in Hz, s dimensionless)
// exact per-segment propagation, the split-step approximation
//   e^{-i tau (H_diag + pi alpha s A)} e^{-i tau H_rf},  H_rf = -(1/2) w_x2 sx2,
// Monte-Carlo ensemble averaging, and CNOT-equivalent gate calibration.

namespace spindec {

inline constexpr double k_default_tau = 304.38e-6;  // seconds

enum class Method { Exact, SplitStep };

std::string to_string(Method method);

struct EvolutionConfig {
  Method method = Method::Exact;
  double tau = k_default_tau;  // seconds
  double alpha_hz = 0.0;       // perturbation strength
  CouplingOperator coupling;
};

// True when tau exceeds 0.1 (2 pi / max|omega_nm|): the split-step commutator
// defect is no longer small and callers should surface a warning.
bool split_step_resolution_warning(const SystemModel& m, const EvolutionConfig& cfg);

// One piecewise-constant segment, s_value the (dimensionless) noise sample.
// Unitary within 1e-10 for both methods.
Matrix segment_propagator(const SystemModel& m, const EvolutionConfig& cfg,
                          double s_value);

class TraceExhaustedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sequential consumption of one trace across the successive two-qubit
// evolutions of a run: a single trace spans the whole algorithm.
struct TraceCursor {
  const NoiseTrace* trace = nullptr;
  std::size_t pos = 0;

  std::size_t remaining() const { return trace ? trace->values.size() - pos : 0; }
};

// Ordered product of n_steps segment propagators, consuming the cursor.
// Throws TraceExhaustedError when fewer than n_steps samples remain.
Matrix trace_propagator(const SystemModel& m, const EvolutionConfig& cfg,
                        TraceCursor& cursor, int n_steps);

// rho -> U rho U^dagger with U = trace_propagator(...).
Matrix evolve_under_trace(const Matrix& rho_in, const SystemModel& m,
                          const EvolutionConfig& cfg, TraceCursor& cursor,
                          int n_steps);

// Arithmetic mean of density matrices; validates the result.
Matrix ensemble_average(std::span<const Matrix> rho_list);

// --- CNOT-equivalent calibration ---------------------------------------------

// The target class C_e = C Rz1(phi): CNOT up to a residual qubit-1 z-rotation.
Matrix cnot_gate();
Matrix rz1(double phi);
Matrix cnot_equivalent(double phi);

// F(phi, t) = |Tr[U(t) C_e^dagger]| / 4, as a closed form in the block-ordered
// analytic eigenvalues and as the direct trace; the two agree to 1e-9.
double cnot_fidelity_closed(const SystemModel& m, double phi, double t);
double cnot_fidelity_trace(const SystemModel& m, double phi, double t);
inline double cnot_fidelity(const SystemModel& m, double phi, double t) {
  return cnot_fidelity_closed(m, phi, t);
}

// Best phase at fixed duration: maximizes F(phi, t) over phi.
struct PhaseOptimum {
  double phi = 0.0;
  double fidelity = 0.0;
};
PhaseOptimum optimal_phase(const SystemModel& m, double t);

struct CnotCalibration {
  double t_c = 0.0;      // seconds
  double phi_c = 0.0;    // radians
  double fidelity = 0.0; // >= f_min by construction
};

class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All local maxima of max_phi F(phi, t) with F >= f_min on [t_lo, t_hi]
// (grid: t step <= 10 us, phi step <= pi/200; then local polish until the
// numerical gradient in (t/ms, phi) drops below 1e-8). Throws
// CalibrationError when none qualify. t range must lie in (0, 50 ms].
std::vector<CnotCalibration> calibrate_cnot(const SystemModel& m, double t_lo,
                                            double t_hi, double f_min);

// (t, best phi, best F) rows for the fidelity-vs-time export.
struct FidelityScanPoint {
  double t = 0.0;
  double phi = 0.0;
  double fidelity = 0.0;
};
std::vector<FidelityScanPoint> fidelity_scan(const SystemModel& m, double t_lo,
                                             double t_hi, double dt);

}  // namespace spindec
