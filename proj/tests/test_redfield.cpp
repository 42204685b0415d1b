#include <doctest.h>

#include "spindec/grover.hpp"
#include "spindec/redfield.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

namespace {

using namespace spindec;

constexpr double k_pi = std::numbers::pi;

SystemModel model_i() { return build_system_model(system_i_params()); }
SystemModel model_ii() { return build_system_model(system_ii_params()); }

Reservoir r1_for(const SystemModel& m_i, const SystemModel& m_ii) {
  return reservoir_presets(m_i, m_ii)[0];
}

// max_kl | sum_n L[(n,n),(k,l)] |: the trace rows of the generator.
double trace_column_defect(const Eigen::Matrix<Complex, 16, 16>& gen) {
  double worst = 0.0;
  for (int k = 0; k < 4; ++k) {
    for (int l = 0; l < 4; ++l) {
      Complex s{0.0, 0.0};
      for (int n = 0; n < 4; ++n) s += gen(4 * n + n, 4 * k + l);
      worst = std::max(worst, std::abs(s));
    }
  }
  return worst;
}

Matrix random_hermitian(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix x(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) x(i, j) = Complex{g(rng), g(rng)};
  }
  return Matrix(0.5 * (x + x.adjoint()));
}

}  // namespace

TEST_SUITE("redfield") {

TEST_CASE("alpha = 0: zero tensor, zero rates, unitary integration") {
  const SystemModel m = model_i();
  const SystemModel m2 = model_ii();
  const Reservoir r = r1_for(m, m2);

  const Rank4 lambda = relaxation_tensor(m, coupling_in_energy_basis(m, CouplingKind::Z2), r, 0.0);
  for (double v : lambda) CHECK(v == 0.0);
  const Rank4 rates = redfield_rates(lambda);
  for (double v : rates) CHECK(v == 0.0);

  const RedfieldGenerator gen = build_redfield_generator(m, CouplingKind::Z2, r, 0.0);
  // Only the coherent -i omega diagonal remains.
  for (int row = 0; row < 16; ++row) {
    for (int col = 0; col < 16; ++col) {
      if (row != col) CHECK(std::abs(gen.generator(row, col)) == 0.0);
    }
  }
  CHECK(std::abs(gen.generator(1, 1) - Complex{0.0, -(m.energies[0] - m.energies[1])}) < 1e-12);

  const double t = 2.3e-3;
  const Vector psi = (Vector(4) << 0.5, 0.5, 0.5, 0.5).finished();
  const Matrix rho0 = density_from_state(psi);
  const Matrix via_me = integrate(rho0, gen, t);
  const Matrix u = propagator(m.h_s, t);
  const Matrix via_unitary = u * rho0 * u.adjoint();
  CHECK((via_me - via_unitary).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(std::abs(purity(via_me) - 1.0) < 1e-9);
}

TEST_CASE("generator preserves trace and Hermiticity for every scenario") {
  const SystemModel m_i = model_i();
  const SystemModel m_ii = model_ii();
  const auto reservoirs = reservoir_presets(m_i, m_ii);
  const Matrix rho = random_hermitian(77);

  for (const SystemModel* m : {&m_i, &m_ii}) {
    for (CouplingKind kind : {CouplingKind::Z1, CouplingKind::Z2, CouplingKind::Z1plusZ2}) {
      for (const Reservoir& r : reservoirs) {
        const RedfieldGenerator gen = build_redfield_generator(*m, kind, r, 63.66);

        CHECK(trace_column_defect(gen.generator) < 1e-9);

        // L(rho^dagger) = (L rho)^dagger for Hermitian rho.
        Eigen::Matrix<Complex, 16, 1> v, vd;
        for (int a = 0; a < 4; ++a) {
          for (int b = 0; b < 4; ++b) {
            v[4 * a + b] = rho(a, b);
            vd[4 * a + b] = std::conj(rho(b, a));
          }
        }
        const Eigen::Matrix<Complex, 16, 1> lv = gen.generator * v;
        const Eigen::Matrix<Complex, 16, 1> lvd = gen.generator * vd;
        double defect = 0.0;
        for (int a = 0; a < 4; ++a) {
          for (int b = 0; b < 4; ++b) {
            defect = std::max(defect, std::abs(lvd[4 * a + b] - std::conj(lv[4 * b + a])));
          }
        }
        CHECK(defect < 1e-9);

        // Population sector of the rate tensor: sum_n R_nnkk = 0.
        for (int k = 0; k < 4; ++k) {
          double s = 0.0;
          for (int n = 0; n < 4; ++n) s += rank4_at(gen.rates, n, n, k, k);
          CHECK(std::abs(s) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("rates scale as alpha squared") {
  const SystemModel m = model_i();
  const Reservoir r = r1_for(m, model_ii());
  const CouplingOperator a = coupling_in_energy_basis(m, CouplingKind::Z2);

  const Rank4 r1x = redfield_rates(relaxation_tensor(m, a, r, 7.5));
  const Rank4 r2x = redfield_rates(relaxation_tensor(m, a, r, 15.0));
  double scale = 0.0;
  for (double v : r1x) scale = std::max(scale, std::abs(v));
  REQUIRE(scale > 0.0);
  for (std::size_t i = 0; i < r1x.size(); ++i) {
    CHECK(std::abs(r2x[i] - 4.0 * r1x[i]) < 1e-12 * 4.0 * scale);
  }
}

TEST_CASE("diagonal coupling gives pure dephasing with the analytic rate") {
  // Z1 is diagonal (+-1) in the eigenbasis, so the master equation decouples:
  // populations frozen, coherence nm decays at (pi alpha)^2 S2(0) (a_n - a_m)^2 / 2.
  const SystemModel m = model_i();
  const Reservoir r4 = make_reservoir(100.0, 0.0, ReservoirLabel::R4);
  const double alpha = 3.0;
  const RedfieldGenerator gen = build_redfield_generator(m, CouplingKind::Z1, r4, alpha);

  // Tensor support: only the (n,m) <- (n,m) entries survive.
  for (int n = 0; n < 4; ++n) {
    for (int mm = 0; mm < 4; ++mm) {
      for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
          if (k != n || l != mm) {
            CHECK(std::abs(rank4_at(gen.rates, n, mm, k, l)) < 1e-12);
          }
        }
      }
    }
  }

  // Eigenbasis-diagonal states are stationary.
  Matrix rho_e = Matrix::Zero(4, 4);
  rho_e(0, 0) = 0.4; rho_e(1, 1) = 0.3; rho_e(2, 2) = 0.2; rho_e(3, 3) = 0.1;
  const Matrix rho_diag = m.eigvecs * rho_e * m.eigvecs.adjoint();
  CHECK((integrate(rho_diag, gen, 24.35e-3) - rho_diag).cwiseAbs().maxCoeff() < 1e-9);

  // Full coherent state: populations constant, coherences damped exponentially.
  const Vector psi = (Vector(4) << 0.5, 0.5, 0.5, 0.5).finished();
  Matrix rho0_e = Matrix::Zero(4, 4);
  {
    const Vector psi_e = m.eigvecs.adjoint() * psi;
    rho0_e = psi_e * psi_e.adjoint();
  }
  const Matrix rho0 = m.eigvecs * rho0_e * m.eigvecs.adjoint();
  const double t = 24.35e-3;
  const Matrix rho_t_e =
      m.eigvecs.adjoint() * integrate(rho0, gen, t) * m.eigvecs;

  const Matrix az = coupling_in_energy_basis(m, CouplingKind::Z1).energy_basis;
  const double s2_zero = correlation_psd(0.0, r4);
  for (int n = 0; n < 4; ++n) {
    for (int mm = 0; mm < 4; ++mm) {
      const double da = (az(n, n) - az(mm, mm)).real();
      const double rate = 0.5 * (k_pi * alpha) * (k_pi * alpha) * s2_zero * da * da;
      const Complex expected = rho0_e(n, mm) * std::exp(-rate * t) *
          std::exp(Complex{0.0, -(m.energies[n] - m.energies[mm]) * t});
      CHECK(std::abs(rho_t_e(n, mm) - expected) < (n == mm ? 1e-10 : 1e-9));
    }
  }
}

TEST_CASE("rate structure follows the spectral overlap") {
  const SystemModel m_i = model_i();
  const SystemModel m_ii = model_ii();
  const Reservoir r1 = r1_for(m_i, m_ii);
  const double alpha = 63.66;

  // System I, Z2 under R1: the resonant 2<->4 transfer dominates, with the
  // closed-form magnitude 2 pre S2(omega_42) |A_24|^2.
  const RedfieldGenerator gi = build_redfield_generator(m_i, CouplingKind::Z2, r1, alpha);
  double best = 0.0;
  int best_n = -1, best_k = -1;
  for (int n = 0; n < 4; ++n) {
    for (int k = 0; k < 4; ++k) {
      if (n == k) continue;
      const double v = std::abs(rank4_at(gi.rates, n, n, k, k));
      if (v > best) { best = v; best_n = n; best_k = k; }
    }
  }
  CHECK(((best_n == 1 && best_k == 3) || (best_n == 3 && best_k == 1)));
  const double a24 = std::abs(gi.coupling.energy_basis(1, 3));
  const double closed = 2.0 * 0.5 * (k_pi * alpha) * (k_pi * alpha) *
      correlation_psd(m_i.transition_frequency(4, 2), r1) * a24 * a24;
  CHECK(best == doctest::Approx(closed).epsilon(1e-9));

  // System II sits far from R1's band: every rate is tiny by comparison.
  const RedfieldGenerator gii = build_redfield_generator(m_ii, CouplingKind::Z2, r1, alpha);
  double max_i = 0.0, max_ii = 0.0;
  for (std::size_t i = 0; i < gi.rates.size(); ++i) {
    max_i = std::max(max_i, std::abs(gi.rates[i]));
    max_ii = std::max(max_ii, std::abs(gii.rates[i]));
  }
  CHECK(max_ii < 0.05 * max_i);
}

TEST_CASE("grover purity regression at the acceptance operating point") {
  const SystemModel m_i = model_i();
  const SystemModel m_ii = model_ii();
  const Reservoir r1 = r1_for(m_i, m_ii);

  const GatePlan plan_i = build_gate_plan(
      m_i, CnotCalibration{6.1447e-3, 0.0006 * k_pi, 0.999998});
  const GatePlan plan_ii = build_gate_plan(
      m_ii, CnotCalibration{12.1623e-3, 0.5116 * k_pi, 0.999334});

  const std::vector<double> alphas{63.66};
  const PurityScan s_i = grover_purity_scan(m_i, plan_i, r1, CouplingKind::Z2, alphas);
  const PurityScan s_ii = grover_purity_scan(m_ii, plan_ii, r1, CouplingKind::Z2, alphas);
  CHECK(s_i.purities[0] == doctest::Approx(0.305249).epsilon(5e-4));
  CHECK(s_ii.purities[0] == doctest::Approx(0.856410).epsilon(5e-4));

  const Reservoir r4 = make_reservoir(100.0, 0.0, ReservoirLabel::R4);
  const PurityScan z_i = grover_purity_scan(m_i, plan_i, r4, CouplingKind::Z1, alphas);
  const PurityScan z_ii = grover_purity_scan(m_ii, plan_ii, r4, CouplingKind::Z1, alphas);
  CHECK(z_i.purities[0] == doctest::Approx(0.388891).epsilon(5e-4));
  CHECK(z_ii.purities[0] == doctest::Approx(0.389257).epsilon(5e-4));
}

TEST_CASE("monte carlo ensemble matches the master equation at weak coupling") {
  const SystemModel m = model_i();
  const Reservoir r1 = r1_for(m, model_ii());
  const double alpha = 3.0;

  const GatePlan plan = build_gate_plan(
      m, CnotCalibration{6.1447e-3, 0.0006 * k_pi, 0.999998});
  REQUIRE(plan.total_segments == 80);

  const auto traces = generate_ensemble(r1, plan.total_segments, plan.tau, 20240817, 2500);
  EvolutionConfig cfg;
  cfg.method = Method::Exact;
  cfg.tau = plan.tau;
  cfg.alpha_hz = alpha;
  cfg.coupling = coupling_in_energy_basis(m, CouplingKind::Z2);
  const GroverResult mc = run_noisy_ensemble(plan, m, traces, cfg);

  const RedfieldGenerator gen = build_redfield_generator(m, CouplingKind::Z2, r1, alpha);
  const GroverResult rf = run_redfield(plan, gen);

  CHECK(trace_distance(mc.rho_final, rf.rho_final) < 0.05);
  CHECK(std::abs(mc.success_prob - rf.success_prob) < 0.05);
}

TEST_CASE("positivity diagnostic fires on a runaway generator") {
  RedfieldGenerator gen;
  gen.system = model_i();
  gen.generator.setZero();
  // Hand-built generator that grows the 0<->1 eigenbasis coherence while
  // keeping trace and Hermiticity intact; the state leaves the cone.
  gen.generator(1, 1) = Complex{100.0, 0.0};
  gen.generator(4, 4) = Complex{100.0, 0.0};

  Matrix rho_e = Matrix::Zero(4, 4);
  rho_e(0, 0) = 0.5; rho_e(1, 1) = 0.5;
  rho_e(0, 1) = 0.5; rho_e(1, 0) = 0.5;
  const Matrix rho0 = gen.system.eigvecs * rho_e * gen.system.eigvecs.adjoint();
  CHECK_THROWS_AS(integrate(rho0, gen, 0.01), PositivityError);
  // Shorter horizon: growth is still within the diagnostic margin.
  CHECK_NOTHROW(integrate(rho0, gen, 1e-9));
}

TEST_CASE("transient negativity stays inside the diagnostic envelope") {
  // The non-secular tensor is not completely positive; for the degenerate
  // system a pure state slips to an O(alpha^2) negative eigenvalue before
  // relaxing back into the cone. Pin the measured envelope so a regression
  // in either direction (runaway growth, or silent clipping) is caught.
  const SystemModel m = model_i();
  const Reservoir r1 = r1_for(m, model_ii());
  const Vector psi = (Vector(4) << 0.5, 0.5, 0.5, 0.5).finished();
  const Matrix rho0 = density_from_state(psi);

  const auto floor_after = [&](CouplingKind kind, double alpha) {
    const RedfieldGenerator gen = build_redfield_generator(m, kind, r1, alpha);
    const Matrix rho_t = integrate(rho0, gen, 20 * 304.38e-6);
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho_t, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  };

  const double weak = floor_after(CouplingKind::Z2, 3.0);
  CHECK(weak < -1e-6);
  CHECK(weak > -1e-3);

  const double operating = floor_after(CouplingKind::Z2, 63.66);
  CHECK(operating < -1e-3);
  CHECK(operating > k_negativity_limit);

  // Diagonal coupling commutes with the Hamiltonian: the map is a Gaussian
  // dephasing channel, completely positive, no slippage at all.
  CHECK(floor_after(CouplingKind::Z1, 63.66) > -1e-12);
}

TEST_CASE("integrate validates its input state") {
  const SystemModel m = model_i();
  const RedfieldGenerator gen =
      build_redfield_generator(m, CouplingKind::Z2, r1_for(m, model_ii()), 3.0);
  Matrix bad = Matrix::Identity(4, 4);  // trace 4
  CHECK_THROWS_AS(integrate(bad, gen, 1e-3), InvalidOperandError);
}

TEST_CASE("exactly degenerate spectrum is handled") {
  // omega_z1 tuned so the two lowest levels coincide exactly:
  // 2 nu_z1 = R+ - R- makes lambda_2 = lambda_4.
  const double j = 215.0;
  const double nu_x2 = 0.5 * 2.272 * j;
  const double nu_z2 = 0.5 * j;
  const double rp = std::hypot(nu_x2, nu_z2 + 0.5 * j);
  const double rm = std::hypot(nu_x2, nu_z2 - 0.5 * j);
  SystemParams p;
  p.omega_z1 = k_pi * (rp - rm);
  p.omega_z2 = k_pi * j;
  p.omega_x2 = 2.272 * k_pi * j;
  p.j = j;
  p.label = SystemLabel::Custom;

  const SystemModel m = build_system_model(p);
  REQUIRE(std::abs(m.energies[1] - m.energies[0]) < 1e-9 * m.energies.cwiseAbs().maxCoeff());

  const Reservoir r = make_reservoir(100.0, 1544.10, ReservoirLabel::Custom);
  const RedfieldGenerator gen = build_redfield_generator(m, CouplingKind::Z2, r, 63.66);
  CHECK(trace_column_defect(gen.generator) < 1e-9);

  const Vector psi = (Vector(4) << 0.5, 0.5, 0.5, 0.5).finished();
  const Matrix rho_t = integrate(density_from_state(psi), gen, 6.0876e-3);
  CHECK(std::abs(rho_t.trace().real() - 1.0) < 1e-9);
  CHECK(purity(rho_t) <= 1.0 + 1e-12);
  CHECK(purity(rho_t) < 1.0);
}

}  // TEST_SUITE
