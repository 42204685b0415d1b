#include "spindec/algebra.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>

namespace spindec {

namespace {

constexpr Complex k_i{0.0, 1.0};

}  // namespace

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, -k_i, k_i, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix identity(Eigen::Index dim) { return Matrix::Identity(dim, dim); }

Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).norm() <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).norm() <= tol;
}

void validate_pure_state(const Vector& psi, double tol) {
  if (std::abs(psi.squaredNorm() - 1.0) > tol) {
    throw InvalidOperandError("pure state is not normalized");
  }
}

void validate_density_matrix(const Matrix& rho, double herm_tol, double trace_tol,
                             double eig_floor) {
  if (rho.rows() != rho.cols()) {
    throw InvalidOperandError("density matrix is not square");
  }
  if (!is_hermitian(rho, herm_tol)) {
    throw InvalidOperandError("density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - Complex{1.0, 0.0}) > trace_tol) {
    throw InvalidOperandError("density matrix trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -eig_floor) {
    throw InvalidOperandError("density matrix has a negative eigenvalue");
  }
}

Matrix density_from_state(const Vector& psi) { return psi * psi.adjoint(); }

namespace {

// Gauge: scale each column so its largest-magnitude entry is real positive;
// order exactly degenerate neighbours by the row index of that entry.
void gauge_fix(Eigen::VectorXd& values, Matrix& vectors) {
  const Eigen::Index n = vectors.cols();
  std::vector<Eigen::Index> anchor(static_cast<std::size_t>(n));
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index row = 0;
    vectors.col(c).cwiseAbs().maxCoeff(&row);
    const Complex pivot = vectors(row, c);
    const double mag = std::abs(pivot);
    if (mag > 0.0) vectors.col(c) *= std::conj(pivot) / mag;
    anchor[static_cast<std::size_t>(c)] = row;
  }
  const double scale = std::max(values.cwiseAbs().maxCoeff(), 1.0);
  for (Eigen::Index c = 0; c + 1 < n; ++c) {
    const bool degenerate = std::abs(values[c + 1] - values[c]) <= 1e-12 * scale;
    if (degenerate && anchor[static_cast<std::size_t>(c)] >
                          anchor[static_cast<std::size_t>(c + 1)]) {
      std::swap(values[c], values[c + 1]);
      vectors.col(c).swap(vectors.col(c + 1));
      std::swap(anchor[static_cast<std::size_t>(c)],
                anchor[static_cast<std::size_t>(c + 1)]);
    }
  }
}

}  // namespace

Eigensystem hermitian_eigensystem(const Matrix& h, double herm_tol) {
  const double scale = std::max(h.norm(), 1.0);
  if (!is_hermitian(h, herm_tol * scale)) {
    throw InvalidOperandError("hermitian_eigensystem: input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint().eval()));
  Eigensystem out{es.eigenvalues(), es.eigenvectors()};
  gauge_fix(out.values, out.vectors);
  return out;
}

Matrix propagator(const Eigensystem& es, double t) {
  const Eigen::Index n = es.values.size();
  Vector phases(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    phases[k] = std::exp(-k_i * es.values[k] * t);
  }
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

Matrix propagator(const Matrix& h, double t) {
  return propagator(hermitian_eigensystem(h), t);
}

double purity(const Matrix& rho) {
  const Complex p = (rho * rho).trace();
  return p.real();
}

double overlap_fidelity(const Matrix& rho0, const Matrix& rho) {
  if (rho0.rows() != rho.rows() || rho0.cols() != rho.cols()) {
    throw InvalidOperandError("overlap_fidelity: dimension mismatch");
  }
  const Complex f = (rho0 * rho).trace();
  if (std::abs(f.imag()) >= 1e-10) {
    throw InvalidOperandError("overlap_fidelity: trace has a large imaginary part");
  }
  return f.real();
}

double trace_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidOperandError("trace_distance: dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(a - b, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace spindec
