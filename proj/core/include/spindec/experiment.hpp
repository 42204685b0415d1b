#pragma once

#include "spindec/gates.hpp"
#include "spindec/noise.hpp"
#include "spindec/propagation.hpp"
#include "spindec/system.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// Reproducible experiment orchestration: JSON config parsing/validation, the
// canonical echo used for reproducibility audits, and the subcommand
// implementations behind the CLI. All outputs embed a header comment with the
// config hash and tool version; identical config + seed produce byte-identical
// files regardless of thread count.

namespace spindec {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Engine { MonteCarlo, Redfield, Both };

std::string to_string(Engine engine);

struct ExperimentConfig {
  // system: preset name ("system-I" | "system-II" | "both") or custom params
  std::string system = "both";
  std::optional<SystemParams> custom_system;

  // reservoir: preset name ("R1".."R4") or custom {gamma, omega0}
  std::string reservoir = "R1";
  std::optional<std::pair<double, double>> custom_reservoir;  // gamma, omega0

  CouplingKind coupling = CouplingKind::Z2;
  std::vector<double> alpha_hz = {63.66};  // scalar or grid (purity scans)
  int m_traces = 12;
  std::uint64_t seed = 0;
  bool seed_set = false;  // seed is mandatory; no wall-clock fallback
  Method method = Method::Exact;
  Engine engine = Engine::MonteCarlo;
  PlanMode plan_mode = PlanMode::SegmentSnapped;
  std::string output_dir = ".";
  int threads = 1;

  double j_hz = 215.0;
  double tau_s = k_default_tau;
  int n_segments = 80;

  // spectrum subcommand
  int spectrum_traces = 2500;

  // calibrate subcommand
  double calibrate_t_min_s = 1.0e-4;
  double calibrate_t_max_s = 15.0e-3;
  double calibrate_f_min = 0.999;
};

// Parse + validate a JSON config file. Unknown keys, missing seed, and
// out-of-range values are ConfigErrors with path context.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config_json(const std::string& text, const std::string& context);

// Canonical serialization (sorted keys, 2-space indent); echo of an echo is
// byte-identical.
std::string canonical_config_json(const ExperimentConfig& cfg);

// FNV-1a 64-bit over the canonical form, hex-encoded; embedded in every output.
std::string config_hash(const ExperimentConfig& cfg);

// Subcommand entry points; each writes its files under cfg.output_dir and
// returns the list of paths written.
std::vector<std::string> cmd_spectrum(const ExperimentConfig& cfg);
std::vector<std::string> cmd_calibrate(const ExperimentConfig& cfg);
std::vector<std::string> cmd_grover(const ExperimentConfig& cfg);
std::vector<std::string> cmd_purity_scan(const ExperimentConfig& cfg);

}  // namespace spindec
