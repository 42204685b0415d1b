#pragma once

#include "spindec/algebra.hpp"

#include <array>
#include <string>

// The two parameterized register Hamiltonians, their eigenstructure,
// transition frequencies, and coupling operators in the energy representation.
//
// H_s = (1/2)[w_z1 sz1 + w_z2 sz2 - w_x2 sx2 + pi J sz1 sz2]   (rad/s, hbar=1)
//
// [sz1, H_s] = 0, so H_s is block-diagonal in qubit 1; the closed-form
// eigenvalues come in that block order (see analytic_eigenvalues).

namespace spindec {

enum class SystemLabel { SystemI, SystemII, Custom };

struct SystemParams {
  double omega_z1 = 0.0;  // rad/s
  double omega_z2 = 0.0;  // rad/s
  double omega_x2 = 0.0;  // rad/s
  double j = 0.0;         // Hz
  SystemLabel label = SystemLabel::Custom;
};

// Presets: omega = (0.378, 1, 2.272) pi J for system I and (0.378, 1, 1.136) pi J
// for system II, J = 215 Hz by default.
SystemParams system_i_params(double j = 215.0);
SystemParams system_ii_params(double j = 215.0);

// Registry for the CLI: "system-I" | "system-II". Throws InvalidOperandError
// for unknown names.
SystemParams find_system_preset(const std::string& name, double j = 215.0);

std::string to_string(SystemLabel label);

struct SystemModel {
  SystemParams params;
  Matrix h_s;                // 4x4, rad/s
  Eigen::VectorXd energies;  // E_1..E_4 ascending, rad/s
  Matrix eigvecs;            // gauge-fixed columns

  // omega_nm = E_n - E_m with 1-based indices; throws on out-of-range.
  double transition_frequency(int n, int m) const;
  double max_transition_frequency() const;
};

Matrix build_hamiltonian(const SystemParams& p);
SystemModel build_system_model(const SystemParams& p);

// Closed-form eigenvalues, returned in the sigma_z^1 block order
//   lambda_1,2 = pi [ nu_z1 +- sqrt((nu_x2)^2 + (nu_z2 + J/2)^2) ]
//   lambda_3,4 = pi [-nu_z1 +- sqrt((nu_x2)^2 + (nu_z2 - J/2)^2) ]
// with nu = omega/(2 pi) in Hz; values in rad/s. Agrees with the numeric
// spectrum as a multiset to 1e-9 relative.
std::array<double, 4> analytic_eigenvalues(const SystemParams& p);

enum class CouplingKind { Z1, Z2, Z1plusZ2 };

std::string to_string(CouplingKind kind);

struct CouplingOperator {
  CouplingKind kind = CouplingKind::Z2;
  Matrix computational_basis;  // sz1, sz2, or their sum
  Matrix energy_basis;         // V^dagger A V
};

// For kind = Z1 the energy-basis matrix is diagonal with entries +-1.
CouplingOperator coupling_in_energy_basis(const SystemModel& m, CouplingKind kind);

}  // namespace spindec
