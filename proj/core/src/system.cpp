#include "spindec/system.hpp"

#include <cmath>
#include <numbers>

namespace spindec {

namespace {

constexpr double k_pi = std::numbers::pi;

}  // namespace

SystemParams system_i_params(double j) {
  const double pij = k_pi * j;
  return {0.378 * pij, 1.0 * pij, 2.272 * pij, j, SystemLabel::SystemI};
}

SystemParams system_ii_params(double j) {
  const double pij = k_pi * j;
  return {0.378 * pij, 1.0 * pij, 1.136 * pij, j, SystemLabel::SystemII};
}

SystemParams find_system_preset(const std::string& name, double j) {
  if (name == "system-I") return system_i_params(j);
  if (name == "system-II") return system_ii_params(j);
  throw InvalidOperandError("unknown system preset: " + name);
}

std::string to_string(SystemLabel label) {
  switch (label) {
    case SystemLabel::SystemI: return "system-I";
    case SystemLabel::SystemII: return "system-II";
    case SystemLabel::Custom: return "custom";
  }
  return "custom";
}

Matrix build_hamiltonian(const SystemParams& p) {
  if (p.j <= 0.0) throw InvalidOperandError("build_hamiltonian: J must be positive");
  const Matrix i2 = identity(2);
  const Matrix sz1 = kron(pauli_z(), i2);
  const Matrix sz2 = kron(i2, pauli_z());
  const Matrix sx2 = kron(i2, pauli_x());
  const Matrix szz = kron(pauli_z(), pauli_z());
  return 0.5 * (p.omega_z1 * sz1 + p.omega_z2 * sz2 - p.omega_x2 * sx2 +
                k_pi * p.j * szz);
}

SystemModel build_system_model(const SystemParams& p) {
  SystemModel m;
  m.params = p;
  m.h_s = build_hamiltonian(p);
  Eigensystem es = hermitian_eigensystem(m.h_s);
  m.energies = es.values;
  m.eigvecs = es.vectors;
  return m;
}

double SystemModel::transition_frequency(int n, int m) const {
  if (n < 1 || n > 4 || m < 1 || m > 4) {
    throw InvalidOperandError("transition_frequency: index out of range");
  }
  return energies[n - 1] - energies[m - 1];
}

double SystemModel::max_transition_frequency() const {
  return energies[3] - energies[0];
}

std::array<double, 4> analytic_eigenvalues(const SystemParams& p) {
  const double nu_z1 = p.omega_z1 / (2.0 * k_pi);
  const double nu_z2 = p.omega_z2 / (2.0 * k_pi);
  const double nu_x2 = p.omega_x2 / (2.0 * k_pi);
  const double r_plus = std::hypot(nu_x2, nu_z2 + 0.5 * p.j);
  const double r_minus = std::hypot(nu_x2, nu_z2 - 0.5 * p.j);
  return {k_pi * (nu_z1 + r_plus), k_pi * (nu_z1 - r_plus),
          k_pi * (-nu_z1 + r_minus), k_pi * (-nu_z1 - r_minus)};
}

std::string to_string(CouplingKind kind) {
  switch (kind) {
    case CouplingKind::Z1: return "Z1";
    case CouplingKind::Z2: return "Z2";
    case CouplingKind::Z1plusZ2: return "Z1plusZ2";
  }
  return "Z2";
}

CouplingOperator coupling_in_energy_basis(const SystemModel& m, CouplingKind kind) {
  const Matrix i2 = identity(2);
  CouplingOperator op;
  op.kind = kind;
  switch (kind) {
    case CouplingKind::Z1: op.computational_basis = kron(pauli_z(), i2); break;
    case CouplingKind::Z2: op.computational_basis = kron(i2, pauli_z()); break;
    case CouplingKind::Z1plusZ2:
      op.computational_basis = kron(pauli_z(), i2) + kron(i2, pauli_z());
      break;
  }
  op.energy_basis = m.eigvecs.adjoint() * op.computational_basis * m.eigvecs;
  return op;
}

}  // namespace spindec
