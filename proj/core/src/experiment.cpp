#include "spindec/experiment.hpp"

#include "spindec/grover.hpp"
#include "spindec/redfield.hpp"
#include "spindec/rng.hpp"
#include "spindec/version.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>

namespace spindec {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string to_string(PlanMode mode) {
  return mode == PlanMode::SegmentSnapped ? "segment-snapped" : "exact-calibrated";
}

CouplingKind parse_coupling(const std::string& s, const std::string& ctx) {
  if (s == "Z1") return CouplingKind::Z1;
  if (s == "Z2") return CouplingKind::Z2;
  if (s == "Z1plusZ2") return CouplingKind::Z1plusZ2;
  throw ConfigError(ctx + ": unknown coupling '" + s + "'");
}

Method parse_method(const std::string& s, const std::string& ctx) {
  if (s == "exact") return Method::Exact;
  if (s == "split-step") return Method::SplitStep;
  throw ConfigError(ctx + ": unknown method '" + s + "'");
}

Engine parse_engine(const std::string& s, const std::string& ctx) {
  if (s == "montecarlo") return Engine::MonteCarlo;
  if (s == "redfield") return Engine::Redfield;
  if (s == "both") return Engine::Both;
  throw ConfigError(ctx + ": unknown engine '" + s + "'");
}

PlanMode parse_plan_mode(const std::string& s, const std::string& ctx) {
  if (s == "segment-snapped") return PlanMode::SegmentSnapped;
  if (s == "exact-calibrated") return PlanMode::ExactCalibrated;
  throw ConfigError(ctx + ": unknown plan mode '" + s + "'");
}

double require_positive(double v, const char* name, const std::string& ctx) {
  if (!(v > 0.0)) {
    throw ConfigError(ctx + ": " + name + " must be positive");
  }
  return v;
}

}  // namespace

std::string to_string(Engine engine) {
  switch (engine) {
    case Engine::MonteCarlo: return "montecarlo";
    case Engine::Redfield: return "redfield";
    case Engine::Both: return "both";
  }
  return "montecarlo";
}

ExperimentConfig parse_config_json(const std::string& text, const std::string& ctx) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(ctx + ": JSON parse failure: " + e.what());
  }
  if (!j.is_object()) throw ConfigError(ctx + ": config root must be an object");

  static const std::set<std::string> known{
      "system",     "reservoir",       "coupling",  "alpha_hz",
      "m_traces",   "seed",            "method",    "engine",
      "plan",       "output_dir",      "threads",   "j_hz",
      "tau_s",      "n_segments",      "spectrum_traces", "calibrate"};
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) {
      throw ConfigError(ctx + ": unknown config key '" + item.key() + "'");
    }
  }

  ExperimentConfig cfg;
  try {
    if (j.contains("j_hz")) cfg.j_hz = j["j_hz"].get<double>();
    require_positive(cfg.j_hz, "j_hz", ctx);

    if (j.contains("system")) {
      if (j["system"].is_string()) {
        cfg.system = j["system"].get<std::string>();
        if (cfg.system != "system-I" && cfg.system != "system-II" &&
            cfg.system != "both") {
          throw ConfigError(ctx + ": unknown system '" + cfg.system + "'");
        }
      } else if (j["system"].is_object()) {
        // Custom parameters given in units of pi J.
        const json& s = j["system"];
        for (const auto& item : s.items()) {
          if (item.key() != "omega_z1_pij" && item.key() != "omega_z2_pij" &&
              item.key() != "omega_x2_pij") {
            throw ConfigError(ctx + ": unknown system key '" + item.key() + "'");
          }
        }
        const double pij = 3.14159265358979323846 * cfg.j_hz;
        SystemParams p;
        p.omega_z1 = s.at("omega_z1_pij").get<double>() * pij;
        p.omega_z2 = s.at("omega_z2_pij").get<double>() * pij;
        p.omega_x2 = s.at("omega_x2_pij").get<double>() * pij;
        p.j = cfg.j_hz;
        p.label = SystemLabel::Custom;
        cfg.system = "custom";
        cfg.custom_system = p;
      } else {
        throw ConfigError(ctx + ": system must be a name or an object");
      }
    }

    if (j.contains("reservoir")) {
      if (j["reservoir"].is_string()) {
        cfg.reservoir = j["reservoir"].get<std::string>();
        if (cfg.reservoir != "R1" && cfg.reservoir != "R2" &&
            cfg.reservoir != "R3" && cfg.reservoir != "R4") {
          throw ConfigError(ctx + ": unknown reservoir '" + cfg.reservoir + "'");
        }
      } else if (j["reservoir"].is_object()) {
        const json& r = j["reservoir"];
        for (const auto& item : r.items()) {
          if (item.key() != "gamma" && item.key() != "omega0") {
            throw ConfigError(ctx + ": unknown reservoir key '" + item.key() + "'");
          }
        }
        const double gamma = r.at("gamma").get<double>();
        const double omega0 = r.at("omega0").get<double>();
        if (!(gamma > 0.0) || omega0 < 0.0) {
          throw ConfigError(ctx + ": reservoir needs gamma > 0 and omega0 >= 0");
        }
        cfg.reservoir = "custom";
        cfg.custom_reservoir = {gamma, omega0};
      } else {
        throw ConfigError(ctx + ": reservoir must be a name or an object");
      }
    }

    if (j.contains("coupling")) {
      cfg.coupling = parse_coupling(j["coupling"].get<std::string>(), ctx);
    }
    if (j.contains("alpha_hz")) {
      cfg.alpha_hz.clear();
      if (j["alpha_hz"].is_array()) {
        for (const json& v : j["alpha_hz"]) cfg.alpha_hz.push_back(v.get<double>());
      } else {
        cfg.alpha_hz.push_back(j["alpha_hz"].get<double>());
      }
      if (cfg.alpha_hz.empty()) throw ConfigError(ctx + ": alpha_hz list is empty");
      for (double a : cfg.alpha_hz) {
        if (a < 0.0) throw ConfigError(ctx + ": alpha_hz must be >= 0");
      }
    }
    if (j.contains("m_traces")) {
      cfg.m_traces = j["m_traces"].get<int>();
      if (cfg.m_traces < 1) throw ConfigError(ctx + ": m_traces must be >= 1");
    }
    if (j.contains("seed")) {
      cfg.seed = j["seed"].get<std::uint64_t>();
      cfg.seed_set = true;
    }
    if (j.contains("method")) {
      cfg.method = parse_method(j["method"].get<std::string>(), ctx);
    }
    if (j.contains("engine")) {
      cfg.engine = parse_engine(j["engine"].get<std::string>(), ctx);
    }
    if (j.contains("plan")) {
      cfg.plan_mode = parse_plan_mode(j["plan"].get<std::string>(), ctx);
    }
    if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
    if (j.contains("threads")) {
      cfg.threads = j["threads"].get<int>();
      if (cfg.threads < 1) throw ConfigError(ctx + ": threads must be >= 1");
    }
    if (j.contains("tau_s")) cfg.tau_s = j["tau_s"].get<double>();
    require_positive(cfg.tau_s, "tau_s", ctx);
    if (j.contains("n_segments")) {
      cfg.n_segments = j["n_segments"].get<int>();
      if (cfg.n_segments < 1) throw ConfigError(ctx + ": n_segments must be >= 1");
    }
    if (j.contains("spectrum_traces")) {
      cfg.spectrum_traces = j["spectrum_traces"].get<int>();
      if (cfg.spectrum_traces < 1) {
        throw ConfigError(ctx + ": spectrum_traces must be >= 1");
      }
    }
    if (j.contains("calibrate")) {
      const json& c = j["calibrate"];
      for (const auto& item : c.items()) {
        if (item.key() != "t_min_s" && item.key() != "t_max_s" &&
            item.key() != "f_min") {
          throw ConfigError(ctx + ": unknown calibrate key '" + item.key() + "'");
        }
      }
      if (c.contains("t_min_s")) cfg.calibrate_t_min_s = c["t_min_s"].get<double>();
      if (c.contains("t_max_s")) cfg.calibrate_t_max_s = c["t_max_s"].get<double>();
      if (c.contains("f_min")) cfg.calibrate_f_min = c["f_min"].get<double>();
      if (!(cfg.calibrate_t_min_s > 0.0) ||
          !(cfg.calibrate_t_max_s > cfg.calibrate_t_min_s) ||
          cfg.calibrate_t_max_s > 50e-3) {
        throw ConfigError(ctx + ": calibrate range must lie in (0, 50 ms]");
      }
      if (!(cfg.calibrate_f_min > 0.0 && cfg.calibrate_f_min < 1.0)) {
        throw ConfigError(ctx + ": calibrate f_min must lie in (0, 1)");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(ctx + ": " + e.what());
  }

  if (!cfg.seed_set) {
    throw ConfigError(ctx + ": seed is mandatory (no wall-clock seeding)");
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_config_json(text, path);
}

namespace {

// Canonical JSON body. Execution details (output_dir, threads) are kept in
// the echo but excluded from the hash: they must not change result bytes.
json config_to_json(const ExperimentConfig& cfg, bool for_hash) {
  json j;
  if (cfg.custom_system) {
    const double pij = 3.14159265358979323846 * cfg.j_hz;
    j["system"] = {{"omega_z1_pij", cfg.custom_system->omega_z1 / pij},
                   {"omega_z2_pij", cfg.custom_system->omega_z2 / pij},
                   {"omega_x2_pij", cfg.custom_system->omega_x2 / pij}};
  } else {
    j["system"] = cfg.system;
  }
  if (cfg.custom_reservoir) {
    j["reservoir"] = {{"gamma", cfg.custom_reservoir->first},
                      {"omega0", cfg.custom_reservoir->second}};
  } else {
    j["reservoir"] = cfg.reservoir;
  }
  j["coupling"] = to_string(cfg.coupling);
  j["alpha_hz"] = cfg.alpha_hz;
  j["m_traces"] = cfg.m_traces;
  j["seed"] = cfg.seed;
  j["method"] = to_string(cfg.method);
  j["engine"] = to_string(cfg.engine);
  j["plan"] = to_string(cfg.plan_mode);
  j["j_hz"] = cfg.j_hz;
  j["tau_s"] = cfg.tau_s;
  j["n_segments"] = cfg.n_segments;
  j["spectrum_traces"] = cfg.spectrum_traces;
  j["calibrate"] = {{"t_min_s", cfg.calibrate_t_min_s},
                    {"t_max_s", cfg.calibrate_t_max_s},
                    {"f_min", cfg.calibrate_f_min}};
  if (!for_hash) {
    j["output_dir"] = cfg.output_dir;
    j["threads"] = cfg.threads;
  }
  return j;
}

}  // namespace

std::string canonical_config_json(const ExperimentConfig& cfg) {
  return config_to_json(cfg, /*for_hash=*/false).dump(2) + "\n";
}

std::string config_hash(const ExperimentConfig& cfg) {
  const std::string body = config_to_json(cfg, /*for_hash=*/true).dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : body) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return fmt::format("{:016x}", h);
}

namespace {

struct RunContext {
  std::vector<SystemModel> models;         // the systems this run operates on
  SystemModel model_i;                     // always built: reservoir presets
  SystemModel model_ii;
  Reservoir reservoir;
  std::string header;                      // "# config_hash=... version=..."
};

RunContext make_context(const ExperimentConfig& cfg) {
  RunContext ctx;
  ctx.model_i = build_system_model(system_i_params(cfg.j_hz));
  ctx.model_ii = build_system_model(system_ii_params(cfg.j_hz));
  if (cfg.custom_system) {
    ctx.models = {build_system_model(*cfg.custom_system)};
  } else if (cfg.system == "system-I") {
    ctx.models = {ctx.model_i};
  } else if (cfg.system == "system-II") {
    ctx.models = {ctx.model_ii};
  } else {
    ctx.models = {ctx.model_i, ctx.model_ii};
  }
  if (cfg.custom_reservoir) {
    ctx.reservoir = make_reservoir(cfg.custom_reservoir->first,
                                   cfg.custom_reservoir->second);
  } else {
    ctx.reservoir = find_reservoir_preset(cfg.reservoir, ctx.model_i, ctx.model_ii);
  }
  ctx.header = fmt::format("# config_hash={} version={}\n", config_hash(cfg),
                           k_version);
  return ctx;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path.string());
  return out;
}

fs::path prepare_output_dir(const ExperimentConfig& cfg) {
  const fs::path dir(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output dir " + dir.string() + ": " +
                            ec.message());
  return dir;
}

// The plan calibration: highest-fidelity record over the configured range
// (earliest time on ties).
CnotCalibration select_calibration(const SystemModel& m, const ExperimentConfig& cfg) {
  const std::vector<CnotCalibration> cals = calibrate_cnot(
      m, cfg.calibrate_t_min_s, cfg.calibrate_t_max_s, cfg.calibrate_f_min);
  CnotCalibration best = cals.front();
  for (const CnotCalibration& c : cals) {
    if (c.fidelity > best.fidelity) best = c;
  }
  return best;
}

void write_density_csv(const fs::path& path, const std::string& header,
                       const Matrix& rho, bool imaginary) {
  std::ofstream out = open_output(path);
  out << header;
  for (int r = 0; r < rho.rows(); ++r) {
    for (int c = 0; c < rho.cols(); ++c) {
      const double v = imaginary ? rho(r, c).imag() : rho(r, c).real();
      out << fmt::format("{:.17e}{}", v, c + 1 == rho.cols() ? "\n" : ",");
    }
  }
}

json grover_metrics(const SystemModel& m, const ExperimentConfig& cfg,
                    const GroverResult& result, const char* engine_name,
                    int m_traces) {
  return json{{"system", to_string(m.params.label)},
              {"reservoir", cfg.custom_reservoir ? "custom" : cfg.reservoir},
              {"coupling", to_string(cfg.coupling)},
              {"alpha_hz", cfg.alpha_hz.front()},
              {"M", m_traces},
              {"engine", engine_name},
              {"success_prob", result.success_prob},
              {"f_rho", result.f_rho},
              {"purity", purity(result.rho_final)}};
}

double mc_purity_scan_point(const SystemModel& m, const GatePlan& plan,
                            const Reservoir& r, const ExperimentConfig& cfg,
                            double alpha, std::uint64_t alpha_seed) {
  const std::array<Vector, 36> inputs = product_input_states();
  EvolutionConfig ecfg{cfg.method, cfg.tau_s, alpha,
                       coupling_in_energy_basis(m, cfg.coupling)};
  double total = 0.0;
  for (std::size_t n = 0; n < inputs.size(); ++n) {
    const std::vector<NoiseTrace> traces =
        generate_ensemble(r, plan.total_segments, cfg.tau_s,
                          hash_seed(alpha_seed, n), cfg.m_traces);
    std::vector<Matrix> rhos;
    rhos.reserve(traces.size());
    for (const NoiseTrace& trace : traces) {
      Vector psi = inputs[n];
      TraceCursor cursor{&trace, 0};
      for (const PlanStep& step : plan.steps) {
        if (step.kind == PlanStep::Kind::IdealGate) {
          psi = step.gate * psi;
        } else {
          psi = trace_propagator(m, ecfg, cursor, step.n_segments) * psi;
        }
      }
      rhos.push_back(density_from_state(psi));
    }
    total += purity(ensemble_average(rhos));
  }
  return total / 36.0;
}

}  // namespace

std::vector<std::string> cmd_spectrum(const ExperimentConfig& cfg) {
  const RunContext ctx = make_context(cfg);
  const fs::path dir = prepare_output_dir(cfg);

  const std::vector<NoiseTrace> traces = generate_ensemble(
      ctx.reservoir, cfg.n_segments, cfg.tau_s, cfg.seed, cfg.spectrum_traces);
  const SpectrumEstimate est = estimate_psd(traces);
  const SpectrumEstimate expect =
      expected_periodogram(ctx.reservoir, cfg.n_segments, cfg.tau_s);

  const fs::path spectrum_path = dir / "spectrum.csv";
  {
    std::ofstream out = open_output(spectrum_path);
    out << ctx.header;
    out << "omega_rad_s,power_estimated,power_target,power_window_expectation\n";
    for (std::size_t k = 0; k < est.frequencies.size(); ++k) {
      out << fmt::format("{:.17e},{:.17e},{:.17e},{:.17e}\n", est.frequencies[k],
                         est.power[k],
                         lorentzian_psd(est.frequencies[k], ctx.reservoir),
                         expect.power[k]);
    }
  }

  const fs::path transitions_path = dir / "transitions.csv";
  {
    std::ofstream out = open_output(transitions_path);
    out << ctx.header;
    out << "system,n,m,omega_rad_s\n";
    for (const SystemModel* m : {&ctx.model_i, &ctx.model_ii}) {
      for (int n = 2; n <= 4; ++n) {
        for (int k = 1; k < n; ++k) {
          out << fmt::format("{},{},{},{:.17e}\n", to_string(m->params.label), n, k,
                             m->transition_frequency(n, k));
        }
      }
    }
  }
  return {spectrum_path.string(), transitions_path.string()};
}

std::vector<std::string> cmd_calibrate(const ExperimentConfig& cfg) {
  const RunContext ctx = make_context(cfg);
  const fs::path dir = prepare_output_dir(cfg);

  const fs::path scan_path = dir / "fidelity_vs_t.csv";
  const fs::path cal_path = dir / "calibrations.json";
  std::ofstream scan_out = open_output(scan_path);
  scan_out << ctx.header;
  scan_out << "system,t_s,phi_rad,fidelity\n";

  json records = json::array();
  for (const SystemModel& m : ctx.models) {
    for (const FidelityScanPoint& p :
         fidelity_scan(m, cfg.calibrate_t_min_s, cfg.calibrate_t_max_s, 10e-6)) {
      scan_out << fmt::format("{},{:.17e},{:.17e},{:.17e}\n",
                              to_string(m.params.label), p.t, p.phi, p.fidelity);
    }
    for (const CnotCalibration& c :
         calibrate_cnot(m, cfg.calibrate_t_min_s, cfg.calibrate_t_max_s,
                        cfg.calibrate_f_min)) {
      records.push_back(json{{"system", to_string(m.params.label)},
                             {"t_c_s", c.t_c},
                             {"phi_c_rad", c.phi_c},
                             {"fidelity", c.fidelity}});
    }
  }

  json doc{{"config_hash", config_hash(cfg)},
           {"version", k_version},
           {"calibrations", records}};
  std::ofstream cal_out = open_output(cal_path);
  cal_out << doc.dump(2) << "\n";
  return {scan_path.string(), cal_path.string()};
}

std::vector<std::string> cmd_grover(const ExperimentConfig& cfg) {
  if (cfg.alpha_hz.size() != 1) {
    throw ConfigError("grover runs take a single alpha_hz value");
  }
  const RunContext ctx = make_context(cfg);
  if (ctx.models.size() != 1) {
    throw ConfigError("grover runs need a single system (system-I or system-II)");
  }
  const SystemModel& m = ctx.models.front();
  const double alpha = cfg.alpha_hz.front();
  const fs::path dir = prepare_output_dir(cfg);

  const GatePlan plan =
      build_gate_plan(m, select_calibration(m, cfg), cfg.plan_mode, cfg.tau_s);
  EvolutionConfig ecfg{cfg.method, cfg.tau_s, alpha,
                       coupling_in_energy_basis(m, cfg.coupling)};
  if (cfg.method == Method::SplitStep && split_step_resolution_warning(m, ecfg)) {
    fmt::print(stderr,
               "warning: tau exceeds a tenth of the fastest system period; "
               "split-step error may be large\n");
  }

  const GroverResult noiseless = run_noiseless(plan, m);

  std::optional<GroverResult> mc;
  std::optional<GroverResult> rf;
  if (cfg.engine != Engine::Redfield) {
    const std::vector<NoiseTrace> traces = generate_ensemble(
        ctx.reservoir, plan.total_segments, cfg.tau_s, cfg.seed, cfg.m_traces);
    mc = run_noisy_ensemble(plan, m, traces, ecfg, cfg.threads);
  }
  if (cfg.engine != Engine::MonteCarlo) {
    const RedfieldGenerator gen =
        build_redfield_generator(m, cfg.coupling, ctx.reservoir, alpha);
    rf = run_redfield(plan, gen);
  }

  const GroverResult& primary = mc ? *mc : *rf;
  std::vector<std::string> written;
  const fs::path rho_re = dir / "rho_real.csv";
  const fs::path rho_im = dir / "rho_imag.csv";
  write_density_csv(rho_re, ctx.header, primary.rho_final, false);
  write_density_csv(rho_im, ctx.header, primary.rho_final, true);
  written.push_back(rho_re.string());
  written.push_back(rho_im.string());
  if (mc && rf) {
    const fs::path rf_re = dir / "rho_real_redfield.csv";
    const fs::path rf_im = dir / "rho_imag_redfield.csv";
    write_density_csv(rf_re, ctx.header, rf->rho_final, false);
    write_density_csv(rf_im, ctx.header, rf->rho_final, true);
    written.push_back(rf_re.string());
    written.push_back(rf_im.string());
  }

  json metrics{{"config_hash", config_hash(cfg)},
               {"version", k_version},
               {"method", to_string(cfg.method)},
               {"noiseless_success_prob", noiseless.success_prob}};
  if (mc) {
    metrics["montecarlo"] = grover_metrics(m, cfg, *mc, "montecarlo", cfg.m_traces);
  }
  if (rf) {
    metrics["redfield"] = grover_metrics(m, cfg, *rf, "redfield", 0);
  }
  if (mc && rf) {
    metrics["trace_distance_engines"] =
        trace_distance(mc->rho_final, rf->rho_final);
  }
  const fs::path metrics_path = dir / "metrics.json";
  std::ofstream out = open_output(metrics_path);
  out << metrics.dump(2) << "\n";
  written.push_back(metrics_path.string());
  return written;
}

std::vector<std::string> cmd_purity_scan(const ExperimentConfig& cfg) {
  if (cfg.engine == Engine::Both) {
    throw ConfigError("purity-scan takes engine redfield or montecarlo");
  }
  const RunContext ctx = make_context(cfg);
  const fs::path dir = prepare_output_dir(cfg);

  std::vector<PurityScan> scans;
  for (std::size_t s = 0; s < ctx.models.size(); ++s) {
    const SystemModel& m = ctx.models[s];
    const GatePlan plan =
        build_gate_plan(m, select_calibration(m, cfg), cfg.plan_mode, cfg.tau_s);
    if (cfg.engine == Engine::Redfield) {
      scans.push_back(
          grover_purity_scan(m, plan, ctx.reservoir, cfg.coupling, cfg.alpha_hz));
    } else {
      PurityScan scan;
      scan.alphas_hz = cfg.alpha_hz;
      scan.system = m.params.label;
      scan.reservoir = ctx.reservoir.label;
      scan.coupling = cfg.coupling;
      for (std::size_t i = 0; i < cfg.alpha_hz.size(); ++i) {
        scan.purities.push_back(mc_purity_scan_point(
            m, plan, ctx.reservoir, cfg, cfg.alpha_hz[i],
            hash_seed(cfg.seed, 1000003ull * s + i)));
      }
      scans.push_back(std::move(scan));
    }
  }

  const fs::path path = dir / "purity_scan.csv";
  std::ofstream out = open_output(path);
  out << ctx.header;
  out << "alpha_hz";
  for (const PurityScan& s : scans) {
    std::string tag = to_string(s.system);
    for (char& c : tag) {
      if (c == '-') c = '_';
    }
    out << fmt::format(",purity_{}", tag);
  }
  out << "\n";
  for (std::size_t i = 0; i < cfg.alpha_hz.size(); ++i) {
    out << fmt::format("{:.17e}", cfg.alpha_hz[i]);
    for (const PurityScan& s : scans) {
      out << fmt::format(",{:.17e}", s.purities[i]);
    }
    out << "\n";
  }
  return {path.string()};
}

}  // namespace spindec
