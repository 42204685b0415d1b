#include "spindec/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace spindec {

namespace {

constexpr double k_pi = std::numbers::pi;
constexpr Complex k_i{0.0, 1.0};

// Analytic spectral decomposition of a 2x2 Hermitian block: with
// h = mu I + n.sigma, e^{-i t h} = e^{-i t mu} [cos(|n|t) I - i sin(|n|t) nhat.sigma].
Eigen::Matrix2cd expm_hermitian_2x2(const Eigen::Matrix2cd& h, double t) {
  const double a = h(0, 0).real();
  const double b = h(1, 1).real();
  const Complex c = h(0, 1);
  const double mu = 0.5 * (a + b);
  const double delta = 0.5 * (a - b);
  const double r = std::sqrt(delta * delta + std::norm(c));
  const double ct = std::cos(r * t);
  const double s_over_r = r > 0.0 ? std::sin(r * t) / r : t;
  const Complex phase = std::polar(1.0, -mu * t);
  Eigen::Matrix2cd u;
  u(0, 0) = phase * (ct - k_i * s_over_r * delta);
  u(0, 1) = phase * (-k_i * s_over_r * c);
  u(1, 0) = phase * (-k_i * s_over_r * std::conj(c));
  u(1, 1) = phase * (ct + k_i * s_over_r * delta);
  return u;
}

// Per-segment propagation workspace: fixed-size copies and the structure
// flags that select the closed-form paths. [sz1, H_s] = 0 and every coupling
// kind is diagonal, so the total Hamiltonian stays block-diagonal in qubit 1;
// the generic eigensolver is only a fallback for exotic custom inputs.
class SegmentEngine {
 public:
  SegmentEngine(const SystemModel& m, const EvolutionConfig& cfg)
      : method_(cfg.method), tau_(cfg.tau), pre_(k_pi * cfg.alpha_hz) {
    h_s_ = m.h_s;
    a_ = cfg.coupling.computational_basis;
    const double scale = std::max(h_s_.norm() + a_.norm(), 1.0);
    auto off_block = [&](const Eigen::Matrix4cd& x) {
      return std::abs(x(0, 2)) + std::abs(x(0, 3)) + std::abs(x(1, 2)) +
             std::abs(x(1, 3)) + std::abs(x(2, 0)) + std::abs(x(3, 0)) +
             std::abs(x(2, 1)) + std::abs(x(3, 1));
    };
    block_ = off_block(h_s_) + off_block(a_) < 1e-12 * scale;
    a_diagonal_ = (a_ - Eigen::Matrix4cd(a_.diagonal().asDiagonal())).norm() <
                  1e-12 * scale;
    if (method_ == Method::SplitStep) {
      h_diag_ = h_s_.diagonal().real();
      const Matrix sx2 = kron(identity(2), pauli_x());
      const Matrix h_rf = -0.5 * m.params.omega_x2 * sx2;
      u_rf_ = propagator(h_rf, tau_);
    }
  }

  Eigen::Matrix4cd step(double s_value) const {
    if (method_ == Method::Exact) {
      return exact_exp(h_s_ + (pre_ * s_value) * a_);
    }
    // Split step: diagonal part (plus the always-diagonal noise term), then
    // the transverse drive.
    Eigen::Matrix4cd first;
    if (a_diagonal_) {
      first.setZero();
      for (int k = 0; k < 4; ++k) {
        first(k, k) = std::polar(
            1.0, -tau_ * (h_diag_[k] + pre_ * s_value * a_(k, k).real()));
      }
    } else {
      Eigen::Matrix4cd h = (pre_ * s_value) * a_;
      h.diagonal() += h_diag_.cast<Complex>();
      first = exact_exp(h);
    }
    return first * u_rf_;
  }

 private:
  Eigen::Matrix4cd exact_exp(const Eigen::Matrix4cd& h) const {
    if (block_) {
      Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
      u.topLeftCorner<2, 2>() = expm_hermitian_2x2(h.topLeftCorner<2, 2>(), tau_);
      u.bottomRightCorner<2, 2>() =
          expm_hermitian_2x2(h.bottomRightCorner<2, 2>(), tau_);
      return u;
    }
    return propagator(Matrix(h), tau_);
  }

  Method method_;
  double tau_;
  double pre_;
  Eigen::Matrix4cd h_s_;
  Eigen::Matrix4cd a_;
  bool block_ = false;
  bool a_diagonal_ = false;
  Eigen::Vector4d h_diag_ = Eigen::Vector4d::Zero();
  Eigen::Matrix4cd u_rf_ = Eigen::Matrix4cd::Identity();
};

}  // namespace

std::string to_string(Method method) {
  return method == Method::Exact ? "exact" : "split-step";
}

bool split_step_resolution_warning(const SystemModel& m, const EvolutionConfig& cfg) {
  return cfg.tau > 0.1 * (2.0 * k_pi / m.max_transition_frequency());
}

Matrix segment_propagator(const SystemModel& m, const EvolutionConfig& cfg,
                          double s_value) {
  if (!std::isfinite(s_value)) {
    throw InvalidOperandError("segment_propagator: non-finite noise sample");
  }
  return SegmentEngine(m, cfg).step(s_value);
}

Matrix trace_propagator(const SystemModel& m, const EvolutionConfig& cfg,
                        TraceCursor& cursor, int n_steps) {
  if (n_steps < 0) throw InvalidOperandError("trace_propagator: negative step count");
  if (cursor.trace == nullptr || cursor.remaining() < static_cast<std::size_t>(n_steps)) {
    throw TraceExhaustedError("noise trace too short for the requested evolution");
  }
  const SegmentEngine engine(m, cfg);
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
  for (int k = 0; k < n_steps; ++k) {
    u = engine.step(cursor.trace->values[cursor.pos + static_cast<std::size_t>(k)]) * u;
  }
  cursor.pos += static_cast<std::size_t>(n_steps);
  return u;
}

Matrix evolve_under_trace(const Matrix& rho_in, const SystemModel& m,
                          const EvolutionConfig& cfg, TraceCursor& cursor,
                          int n_steps) {
  const Matrix u = trace_propagator(m, cfg, cursor, n_steps);
  return u * rho_in * u.adjoint();
}

Matrix ensemble_average(std::span<const Matrix> rho_list) {
  if (rho_list.empty()) throw InvalidOperandError("ensemble_average: empty list");
  Matrix mean = rho_list.front();
  for (std::size_t k = 1; k < rho_list.size(); ++k) {
    if (rho_list[k].rows() != mean.rows() || rho_list[k].cols() != mean.cols()) {
      throw InvalidOperandError("ensemble_average: dimension mismatch");
    }
    mean += rho_list[k];
  }
  mean /= static_cast<double>(rho_list.size());
  validate_density_matrix(mean);
  return mean;
}

Matrix cnot_gate() {
  Matrix c = Matrix::Zero(4, 4);
  c(0, 0) = 1;
  c(1, 1) = 1;
  c(2, 3) = 1;
  c(3, 2) = 1;
  return c;
}

Matrix rz1(double phi) {
  Matrix r = Matrix::Zero(4, 4);
  const Complex up = std::polar(1.0, 0.5 * phi);
  r(0, 0) = up;
  r(1, 1) = up;
  r(2, 2) = std::conj(up);
  r(3, 3) = std::conj(up);
  return r;
}

Matrix cnot_equivalent(double phi) { return cnot_gate() * rz1(phi); }

namespace {

// F = |A(t) - pref e^{i phi} B(t)| / 4 with A the sum over the qubit-1 "up"
// eigenvalue pair and B the difference over the "down" pair, in the block
// order of analytic_eigenvalues.
struct ClosedFormTerms {
  Complex a;
  Complex b_scaled;  // pref * B
};

ClosedFormTerms closed_form_terms(const SystemParams& p, double t) {
  const std::array<double, 4> lam = analytic_eigenvalues(p);
  const double nu_x2 = p.omega_x2 / (2.0 * k_pi);
  const double nu_z2 = p.omega_z2 / (2.0 * k_pi);
  const double r_minus = std::hypot(nu_x2, nu_z2 - 0.5 * p.j);
  const double pref = r_minus > 0.0 ? nu_x2 / r_minus : 0.0;
  const Complex a =
      std::polar(1.0, -lam[0] * t) + std::polar(1.0, -lam[1] * t);
  const Complex b =
      std::polar(1.0, -lam[2] * t) - std::polar(1.0, -lam[3] * t);
  return {a, pref * b};
}

}  // namespace

double cnot_fidelity_closed(const SystemModel& m, double phi, double t) {
  const ClosedFormTerms terms = closed_form_terms(m.params, t);
  return 0.25 * std::abs(terms.a - std::polar(1.0, phi) * terms.b_scaled);
}

double cnot_fidelity_trace(const SystemModel& m, double phi, double t) {
  const Eigensystem es{m.energies, m.eigvecs};
  const Matrix u = propagator(es, t);
  const Complex tr = (u * cnot_equivalent(phi).adjoint()).trace();
  return 0.25 * std::abs(tr);
}

PhaseOptimum optimal_phase(const SystemModel& m, double t) {
  // |A - e^{i phi} B| is maximal when e^{i phi} B is antiparallel to A.
  const ClosedFormTerms terms = closed_form_terms(m.params, t);
  PhaseOptimum opt;
  if (std::abs(terms.b_scaled) == 0.0) {
    opt.phi = 0.0;
    opt.fidelity = 0.25 * std::abs(terms.a);
    return opt;
  }
  double phi = std::arg(terms.a) - std::arg(terms.b_scaled) + k_pi;
  phi = std::remainder(phi, 2.0 * k_pi);  // (-pi, pi]
  opt.phi = phi;
  opt.fidelity = 0.25 * (std::abs(terms.a) + std::abs(terms.b_scaled));
  return opt;
}

std::vector<FidelityScanPoint> fidelity_scan(const SystemModel& m, double t_lo,
                                             double t_hi, double dt) {
  if (!(t_lo > 0.0) || !(t_hi > t_lo) || !(dt > 0.0)) {
    throw InvalidOperandError("fidelity_scan: bad time range");
  }
  std::vector<FidelityScanPoint> points;
  const int n = static_cast<int>(std::floor((t_hi - t_lo) / dt + 0.5)) + 1;
  points.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double t = t_lo + k * dt;
    if (t > t_hi + 0.5 * dt) break;
    const PhaseOptimum opt = optimal_phase(m, t);
    points.push_back({t, opt.phi, opt.fidelity});
  }
  return points;
}

namespace {

constexpr double k_golden = 0.6180339887498949;

// Golden-section maximization of f on [lo, hi].
template <typename F>
double golden_max(F&& f, double lo, double hi, double tol) {
  double x1 = hi - k_golden * (hi - lo);
  double x2 = lo + k_golden * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + k_golden * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - k_golden * (hi - lo);
      f1 = f(x1);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<CnotCalibration> calibrate_cnot(const SystemModel& m, double t_lo,
                                            double t_hi, double f_min) {
  if (!(t_lo > 0.0) || !(t_hi > t_lo) || t_hi > 50e-3) {
    throw InvalidOperandError("calibrate_cnot: t range must lie in (0, 50 ms]");
  }
  constexpr double k_t_step = 10e-6;
  constexpr int k_phi_steps = 400;  // pi/200 spacing over [0, 2 pi)

  // Grid scan of max_phi F(phi, t).
  std::vector<FidelityScanPoint> grid;
  for (double t = t_lo; t <= t_hi + 0.5 * k_t_step; t += k_t_step) {
    double best_f = -1.0;
    double best_phi = 0.0;
    for (int p = 0; p < k_phi_steps; ++p) {
      const double phi = 2.0 * k_pi * p / k_phi_steps;
      const double f = cnot_fidelity_closed(m, phi, t);
      if (f > best_f) {
        best_f = f;
        best_phi = phi;
      }
    }
    grid.push_back({t, best_phi, best_f});
  }

  std::vector<CnotCalibration> results;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const bool rises = k == 0 || grid[k].fidelity > grid[k - 1].fidelity;
    const bool falls = k + 1 == grid.size() || grid[k].fidelity >= grid[k + 1].fidelity;
    if (!(rises && falls) || grid[k].fidelity < f_min) continue;

    // Alternating 1-D polish around the grid candidate until the numerical
    // gradient in (t [ms], phi) drops below 1e-8.
    double t = grid[k].t;
    double phi = grid[k].phi;
    bool converged = false;
    for (int round = 0; round < 50 && !converged; ++round) {
      phi = golden_max([&](double x) { return cnot_fidelity_closed(m, x, t); },
                       phi - k_pi / k_phi_steps * 2.0,
                       phi + k_pi / k_phi_steps * 2.0, 1e-13);
      t = golden_max([&](double x) { return cnot_fidelity_closed(m, phi, x); },
                     std::max(t_lo, t - 2.0 * k_t_step),
                     std::min(t_hi, t + 2.0 * k_t_step), 1e-16);
      const double h_t = 1e-10;
      const double h_phi = 1e-7;
      const double g_t = (cnot_fidelity_closed(m, phi, t + h_t) -
                          cnot_fidelity_closed(m, phi, t - h_t)) /
                         (2.0 * h_t) * 1e-3;  // per millisecond
      const double g_phi = (cnot_fidelity_closed(m, phi + h_phi, t) -
                            cnot_fidelity_closed(m, phi - h_phi, t)) /
                           (2.0 * h_phi);
      converged = std::hypot(g_t, g_phi) < 1e-8;
    }
    const double f = cnot_fidelity_closed(m, phi, t);
    if (f < f_min) continue;
    phi = std::remainder(phi, 2.0 * k_pi);

    // Refined neighbours from adjacent grid points collapse to one record.
    bool duplicate = false;
    for (CnotCalibration& r : results) {
      if (std::abs(r.t_c - t) < 5e-6) {
        duplicate = true;
        if (f > r.fidelity) r = {t, phi, f};
        break;
      }
    }
    if (!duplicate) results.push_back({t, phi, f});
  }

  if (results.empty()) {
    throw CalibrationError("no calibration reached the requested fidelity in range");
  }
  return results;
}

}  // namespace spindec
