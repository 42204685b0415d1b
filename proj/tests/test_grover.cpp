#include <doctest.h>

#include "spindec/grover.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace {

using namespace spindec;

constexpr double k_pi = std::numbers::pi;

SystemModel model_i() { return build_system_model(system_i_params()); }
SystemModel model_ii() { return build_system_model(system_ii_params()); }

CnotCalibration cal_i() { return {6.1447e-3, 0.0019, 0.999998}; }
CnotCalibration cal_ii_short() { return {4.0541e-3, 0.1705 * k_pi, 0.999926}; }
CnotCalibration cal_ii_long() { return {12.1623e-3, 0.5116 * k_pi, 0.999334}; }

Reservoir test_reservoir() { return make_reservoir(100.0, 2044.48); }

EvolutionConfig exact_cfg(const SystemModel& m, double alpha, double tau) {
  EvolutionConfig cfg;
  cfg.method = Method::Exact;
  cfg.tau = tau;
  cfg.alpha_hz = alpha;
  cfg.coupling = coupling_in_energy_basis(m, CouplingKind::Z2);
  return cfg;
}

}  // namespace

TEST_SUITE("grover") {

TEST_CASE("ideal-gate plan finds the marked state with certainty") {
  const SystemModel m = model_i();
  const GroverResult r = run_noiseless(build_ideal_plan(), m);
  CHECK(r.success_prob > 1.0 - 1e-9);
  CHECK(std::abs(purity(r.rho_final) - 1.0) < 1e-12);

  // Retargeted oracle: one iteration amplifies whichever state is marked.
  const GroverResult r01 = run_noiseless(build_ideal_plan(1), m);
  CHECK(r01.rho_final(1, 1).real() > 1.0 - 1e-9);
  CHECK(r01.success_prob < 1e-9);
}

TEST_CASE("segment-snapped plans have the preset block structure") {
  const GatePlan p_i = build_gate_plan(model_i(), cal_i());
  const GatePlan p_ii = build_gate_plan(model_ii(), cal_ii_long());

  for (const GatePlan* p : {&p_i, &p_ii}) {
    CHECK(p->mode == PlanMode::SegmentSnapped);
    CHECK(p->steps.size() == 12);
    CHECK(p->total_segments == 80);
    CHECK(p->total_duration == doctest::Approx(80 * k_default_tau).epsilon(1e-12));
    std::vector<int> seg_counts;
    for (const PlanStep& s : p->steps) {
      if (s.kind == PlanStep::Kind::Evolution) {
        seg_counts.push_back(s.n_segments);
        CHECK(s.duration == doctest::Approx(s.n_segments * k_default_tau).epsilon(1e-12));
        CHECK(s.comp_phi > -k_pi);
        CHECK(s.comp_phi <= k_pi);
      }
    }
    REQUIRE(seg_counts.size() == 2);
    if (p == &p_i) {
      CHECK(seg_counts[0] == 20);
      CHECK(seg_counts[1] == 60);
    } else {
      CHECK(seg_counts[0] == 40);
      CHECK(seg_counts[1] == 40);
    }
  }
}

TEST_CASE("noiseless success probabilities: snapped presets") {
  const GroverResult r_i = run_noiseless(build_gate_plan(model_i(), cal_i()), model_i());
  const GroverResult r_ii =
      run_noiseless(build_gate_plan(model_ii(), cal_ii_long()), model_ii());
  CHECK(r_i.success_prob == doctest::Approx(0.9877020).epsilon(1e-6));
  CHECK(r_ii.success_prob == doctest::Approx(0.9985592).epsilon(1e-6));
  CHECK(std::abs(r_i.rho_final.trace().real() - 1.0) < 1e-12);
  CHECK(std::abs(purity(r_i.rho_final) - 1.0) < 1e-12);
}

TEST_CASE("noiseless success probabilities: exact calibrated durations") {
  const GatePlan p_i = build_gate_plan(model_i(), cal_i(), PlanMode::ExactCalibrated);
  const GatePlan p_ii =
      build_gate_plan(model_ii(), cal_ii_short(), PlanMode::ExactCalibrated);

  CHECK(p_i.total_segments == 0);
  std::vector<double> durs;
  for (const PlanStep& s : p_i.steps) {
    if (s.kind == PlanStep::Kind::Evolution) durs.push_back(s.duration);
  }
  REQUIRE(durs.size() == 2);
  CHECK(durs[0] == doctest::Approx(cal_i().t_c).epsilon(1e-12));
  CHECK(durs[1] == doctest::Approx(3 * cal_i().t_c).epsilon(1e-12));

  durs.clear();
  for (const PlanStep& s : p_ii.steps) {
    if (s.kind == PlanStep::Kind::Evolution) durs.push_back(s.duration);
  }
  REQUIRE(durs.size() == 2);
  CHECK(durs[0] == doctest::Approx(cal_ii_short().t_c).epsilon(1e-12));
  CHECK(durs[1] == doctest::Approx(cal_ii_short().t_c).epsilon(1e-12));

  const double s_i = run_noiseless(p_i, model_i()).success_prob;
  const double s_ii = run_noiseless(p_ii, model_ii()).success_prob;
  CHECK(s_i == doctest::Approx(0.9999749).epsilon(1e-6));
  CHECK(s_ii == doctest::Approx(0.9998327).epsilon(1e-6));
  CHECK(s_i >= 0.999);
  CHECK(s_ii >= 0.999);
}

TEST_CASE("zero-noise ensemble reproduces the noiseless run exactly") {
  const SystemModel m = model_i();
  const GatePlan plan = build_gate_plan(m, cal_i());
  const auto traces = generate_ensemble(test_reservoir(), 80, plan.tau, 7, 3);

  const GroverResult noisy =
      run_noisy_ensemble(plan, m, traces, exact_cfg(m, 0.0, plan.tau));
  const GroverResult ref = run_noiseless(plan, m);
  CHECK(trace_distance(noisy.rho_final, ref.rho_final) < 1e-12);
  CHECK(noisy.f_rho == doctest::Approx(1.0).epsilon(1e-12));
  for (double p : noisy.per_trace_purities) CHECK(p == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("split-step propagation at zero noise: frozen Trotter defect") {
  // One trace, alpha = 0: the only deviation from the exact-engine run is the
  // first-order split of the segment propagator.
  for (int sys = 0; sys < 2; ++sys) {
    const SystemModel m = sys == 0 ? model_i() : model_ii();
    const GatePlan plan = build_gate_plan(m, sys == 0 ? cal_i() : cal_ii_long());
    const auto traces = generate_ensemble(test_reservoir(), 80, plan.tau, 11, 1);
    EvolutionConfig cfg = exact_cfg(m, 0.0, plan.tau);
    cfg.method = Method::SplitStep;
    const GroverResult r = run_noisy_ensemble(plan, m, traces, cfg);
    const double expected = sys == 0 ? 0.9813637 : 0.9988653;
    CHECK(r.success_prob == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("redfield engine at alpha = 0 matches the noiseless run") {
  const SystemModel m = model_ii();
  const GatePlan plan = build_gate_plan(m, cal_ii_long());
  const RedfieldGenerator gen =
      build_redfield_generator(m, CouplingKind::Z2, test_reservoir(), 0.0);
  const GroverResult rf = run_redfield(plan, gen);
  const GroverResult ref = run_noiseless(plan, m);
  CHECK(trace_distance(rf.rho_final, ref.rho_final) < 1e-9);
  CHECK(rf.f_rho == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("purity scan at alpha = 0 returns unit purity") {
  const SystemModel m = model_i();
  const GatePlan plan = build_gate_plan(m, cal_i());
  const PurityScan scan =
      grover_purity_scan(m, plan, test_reservoir(), CouplingKind::Z2, {0.0});
  REQUIRE(scan.purities.size() == 1);
  CHECK(scan.purities[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("ensemble reduction is independent of the thread count") {
  const SystemModel m = model_i();
  const GatePlan plan = build_gate_plan(m, cal_i());
  const auto traces = generate_ensemble(test_reservoir(), 80, plan.tau, 99, 7);
  const EvolutionConfig cfg = exact_cfg(m, 5.0, plan.tau);

  const GroverResult a = run_noisy_ensemble(plan, m, traces, cfg, 1);
  const GroverResult b = run_noisy_ensemble(plan, m, traces, cfg, 3);
  CHECK((a.rho_final - b.rho_final).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.success_prob == b.success_prob);
  REQUIRE(a.per_trace_purities.size() == b.per_trace_purities.size());
  for (std::size_t k = 0; k < a.per_trace_purities.size(); ++k) {
    CHECK(a.per_trace_purities[k] == b.per_trace_purities[k]);
  }
}

TEST_CASE("plan construction and noisy-run validation errors") {
  const SystemModel m = model_i();

  SystemParams custom = system_i_params();
  custom.label = SystemLabel::Custom;
  CHECK_THROWS_AS(build_gate_plan(build_system_model(custom), cal_i()),
                  InvalidOperandError);
  CHECK_NOTHROW(build_gate_plan(build_system_model(custom), cal_i(),
                                PlanMode::ExactCalibrated));

  CnotCalibration weak = cal_i();
  weak.fidelity = 0.99;
  CHECK_THROWS_AS(build_gate_plan(m, weak), CalibrationError);

  const GatePlan plan = build_gate_plan(m, cal_i());
  const EvolutionConfig cfg = exact_cfg(m, 1.0, plan.tau);

  CHECK_THROWS_AS(run_noisy_ensemble(plan, m, {}, cfg), InvalidOperandError);

  const GatePlan exact_plan = build_gate_plan(m, cal_i(), PlanMode::ExactCalibrated);
  const auto traces = generate_ensemble(test_reservoir(), 80, plan.tau, 5, 2);
  CHECK_THROWS_AS(run_noisy_ensemble(exact_plan, m, traces, cfg), InvalidOperandError);

  EvolutionConfig wrong_tau = cfg;
  wrong_tau.tau = plan.tau * 1.5;
  CHECK_THROWS_AS(run_noisy_ensemble(plan, m, traces, wrong_tau), InvalidOperandError);

  const auto short_traces = generate_ensemble(test_reservoir(), 79, plan.tau, 5, 2);
  EvolutionConfig short_cfg = cfg;
  CHECK_THROWS_AS(run_noisy_ensemble(plan, m, short_traces, short_cfg),
                  TraceExhaustedError);
}

TEST_CASE("success probability is linear in the input state") {
  const SystemModel m = model_ii();
  const GatePlan plan = build_gate_plan(m, cal_ii_long());

  Vector e0 = Vector::Zero(4); e0[0] = 1.0;
  Vector e1 = Vector::Zero(4); e1[1] = 1.0;
  const Matrix rho_a = density_from_state(e0);
  const Matrix rho_b = density_from_state(e1);
  const Matrix mix = 0.3 * rho_a + 0.7 * rho_b;

  const double sa = run_noiseless(plan, m, rho_a).success_prob;
  const double sb = run_noiseless(plan, m, rho_b).success_prob;
  const double sm = run_noiseless(plan, m, mix).success_prob;
  CHECK(sm == doctest::Approx(0.3 * sa + 0.7 * sb).epsilon(1e-12));
}

}  // TEST_SUITE
