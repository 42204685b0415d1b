#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

// Dense complex linear algebra and quantum-state primitives for small
// (4-dimensional, generalizable to 2^n) Hilbert spaces.
//
// Conventions:
//   - hbar = 1 everywhere; Hamiltonians carry angular-frequency units (rad/s).
//   - Eigenvalues ascending; eigenvector gauge: the largest-magnitude entry of
//     each column is made real positive. Exactly degenerate neighbours are
//     ordered by the row index of that largest entry.

namespace spindec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Thrown when an input matrix violates a structural precondition
// (non-Hermitian Hamiltonian, invalid density matrix, dimension mismatch).
class InvalidOperandError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix identity(Eigen::Index dim);

// Standard tensor product; dimensions multiply.
Matrix kron(const Matrix& a, const Matrix& b);

bool is_hermitian(const Matrix& m, double tol);
bool is_unitary(const Matrix& m, double tol);

// |amplitudes|^2 must sum to 1 within tol.
void validate_pure_state(const Vector& psi, double tol = 1e-12);

// Hermitian within herm_tol, unit trace within trace_tol, eigenvalues >= -eig_floor.
void validate_density_matrix(const Matrix& rho, double herm_tol = 1e-10,
                             double trace_tol = 1e-10, double eig_floor = 1e-9);

// rho = |psi><psi|
Matrix density_from_state(const Vector& psi);

struct Eigensystem {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // columns, gauge-fixed
};

// h = V diag(values) V^dagger, reconstruction within 1e-10 Frobenius.
// Throws InvalidOperandError if h is not Hermitian within herm_tol.
Eigensystem hermitian_eigensystem(const Matrix& h, double herm_tol = 1e-9);

// U(t) = V e^{-i diag(E) t} V^dagger. h in rad/s, t in seconds.
Matrix propagator(const Matrix& h, double t);

// Same, from a precomputed eigensystem (hot paths).
Matrix propagator(const Eigensystem& es, double t);

// Tr(rho^2), real within 1e-12.
double purity(const Matrix& rho);

// Re Tr(rho0 rho). Throws if dims differ or |Im Tr| >= 1e-10.
double overlap_fidelity(const Matrix& rho0, const Matrix& rho);

// (1/2) ||a - b||_1 via eigenvalues of the Hermitian difference.
double trace_distance(const Matrix& a, const Matrix& b);

}  // namespace spindec
