#pragma once

#include "spindec/gates.hpp"
#include "spindec/noise.hpp"
#include "spindec/system.hpp"

#include <array>
#include <vector>

// Bloch-Redfield master-equation branch: predicts the ensemble dynamics
// without Monte Carlo. In the system eigenbasis,
//
//   d rho_nm / dt = -i omega_nm rho_nm - sum_kl R_nmkl rho_kl
//
//   Lambda_lmnk = (1/2) (pi alpha)^2 S2(omega_nk) A_lm A_nk     (real)
//   R_nmkl = delta_lm sum_r Lambda_nrrk + delta_nk sum_r Lambda*_lrrm
//            - Lambda_lmnk - Lambda*_knml
//
// Lambda* is the conjugate table; for our real Lambda (Hermitian A after the
// gauge fix, even S2) it is the index reversal Lambda*_abcd = Lambda_dcba, so
// the starred terms read sum_r Lambda_mrrl and Lambda_knml. That pairing makes
// each starred term the adjoint partner of its unstarred one, and the generator
// then preserves trace and Hermiticity identically instead of only to leading
// order. S2 is the two-sided spectrum of the unit-RMS trace (correlation_psd)
// -- the scale that makes this branch agree with the Monte-Carlo ensemble --
// and Lamb shifts (imaginary parts) are dropped. No secular approximation.
// Integration is by matrix exponential of the 16x16 generator
//   L[(n,m),(k,l)] = -i omega_nm delta_nk delta_ml - R_nmkl
// acting on row-major vec(rho).

namespace spindec {

// Rank-4 table on 4 indices in 0..3; layout [l][m][n][k] flattened row-major.
using Rank4 = std::array<double, 256>;

inline double& rank4_at(Rank4& t, int a, int b, int c, int d) {
  return t[static_cast<std::size_t>(((a * 4 + b) * 4 + c) * 4 + d)];
}
inline double rank4_at(const Rank4& t, int a, int b, int c, int d) {
  return t[static_cast<std::size_t>(((a * 4 + b) * 4 + c) * 4 + d)];
}

// The non-secular generator is not completely positive: pure states pick up
// a transient negative eigenvalue of order alpha^2 (about -2e-4 at 3 Hz and
// -5e-2 at 63.66 Hz for the degenerate system I; identically zero for
// diagonal couplings).  That slippage is kept in the state, never clipped.
// Once an eigenvalue drops below this limit the state is farther than twice
// the Monte-Carlo cross-validation tolerance (trace distance 0.05) from every
// physical state, so the weak-coupling truncation has failed outright.
inline constexpr double k_negativity_limit = -0.1;

// Thrown when integration produces a state with an eigenvalue below
// k_negativity_limit: results past that point must not be trusted.
class PositivityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RedfieldGenerator {
  SystemModel system;
  CouplingOperator coupling;
  Reservoir reservoir;
  double alpha_hz = 0.0;
  Rank4 rates{};                       // R_nmkl, 1/s
  Eigen::Matrix<Complex, 16, 16> generator;  // L, eigenbasis, row-major vec
};

// Lambda_lmnk; all entries real, zero at alpha = 0.
Rank4 relaxation_tensor(const SystemModel& m, const CouplingOperator& coupling,
                                const Reservoir& r, double alpha_hz);

// Exact index contraction of the rate formula above.
Rank4 redfield_rates(const Rank4& lambda);

RedfieldGenerator build_redfield_generator(const SystemModel& m, CouplingKind kind,
                                           const Reservoir& r, double alpha_hz);

// rho(t) from exp(L t): transform into the eigenbasis, evolve, transform out.
// Validates trace/Hermiticity (1e-9 scale) and the positivity diagnostic.
// Throws InvalidOperandError on a non-finite generator.
Matrix integrate(const Matrix& rho0, const RedfieldGenerator& gen, double t);

struct PurityScan {
  std::vector<double> alphas_hz;
  std::vector<double> purities;  // in [1/4, 1]
  SystemLabel system = SystemLabel::Custom;
  ReservoirLabel reservoir = ReservoirLabel::Custom;
  CouplingKind coupling = CouplingKind::Z2;
};

// For each alpha: run the Grover gate plan with every two-qubit evolution
// replaced by Redfield integration, over the 36 product inputs, and average
// Tr(rho^2). plan must belong to m.
PurityScan grover_purity_scan(const SystemModel& m, const GatePlan& plan,
                              const Reservoir& r, CouplingKind kind,
                              const std::vector<double>& alphas_hz);

}  // namespace spindec
