#include "spindec/algebra.hpp"
#include "spindec/experiment.hpp"
#include "spindec/propagation.hpp"
#include "spindec/redfield.hpp"
#include "spindec/version.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdint>
#include <string>
#include <vector>

namespace {

spindec::Engine engine_from_name(const std::string& name) {
  if (name == "montecarlo") return spindec::Engine::MonteCarlo;
  if (name == "redfield") return spindec::Engine::Redfield;
  if (name == "both") return spindec::Engine::Both;
  throw spindec::ConfigError("unknown engine '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-qubit spin decoherence experiments", "spindec"};
  app.set_version_flag("--version", std::string(spindec::k_version));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string engine_name;
  std::uint64_t seed = 0;
  int threads = 1;

  std::vector<CLI::Option*> seed_opts, out_opts, engine_opts, thread_opts;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file")->required();
    seed_opts.push_back(sub->add_option("--seed", seed, "override config seed"));
    out_opts.push_back(sub->add_option("--out", out_dir, "override output dir"));
    engine_opts.push_back(sub->add_option(
        "--engine", engine_name, "override engine: montecarlo|redfield|both"));
    thread_opts.push_back(
        sub->add_option("--threads", threads, "override worker thread count"));
  };

  CLI::App* spectrum =
      app.add_subcommand("spectrum", "estimate the engineered-noise spectrum");
  CLI::App* calibrate =
      app.add_subcommand("calibrate", "scan and calibrate the entangling gate");
  CLI::App* grover =
      app.add_subcommand("grover", "run the noisy Grover search");
  CLI::App* purity_scan = app.add_subcommand(
      "purity-scan", "average Grover purity over a coupling-strength grid");
  CLI::App* config_cmd = app.add_subcommand("config", "config utilities");
  config_cmd->require_subcommand(1);
  CLI::App* echo =
      config_cmd->add_subcommand("echo", "print the canonical config");
  for (CLI::App* sub : {spectrum, calibrate, grover, purity_scan, echo}) {
    add_common(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto given = [](const std::vector<CLI::Option*>& opts) {
    for (const CLI::Option* o : opts) {
      if (o->count() > 0) return true;
    }
    return false;
  };

  try {
    spindec::ExperimentConfig cfg = spindec::load_config(config_path);
    if (given(seed_opts)) {
      cfg.seed = seed;
      cfg.seed_set = true;
    }
    if (given(out_opts)) cfg.output_dir = out_dir;
    if (given(engine_opts)) cfg.engine = engine_from_name(engine_name);
    if (given(thread_opts)) {
      if (threads < 1) throw spindec::ConfigError("threads must be >= 1");
      cfg.threads = threads;
    }

    std::vector<std::string> written;
    if (spectrum->parsed()) {
      written = spindec::cmd_spectrum(cfg);
    } else if (calibrate->parsed()) {
      written = spindec::cmd_calibrate(cfg);
    } else if (grover->parsed()) {
      written = spindec::cmd_grover(cfg);
    } else if (purity_scan->parsed()) {
      written = spindec::cmd_purity_scan(cfg);
    } else if (echo->parsed()) {
      fmt::print("{}", spindec::canonical_config_json(cfg));
    }
    for (const std::string& path : written) {
      fmt::print("wrote {}\n", path);
    }
    return 0;
  } catch (const spindec::ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return 2;
  } catch (const spindec::CalibrationError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return 2;
  } catch (const spindec::TraceExhaustedError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return 2;
  } catch (const spindec::InvalidOperandError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return 2;
  } catch (const spindec::PositivityError& e) {
    fmt::print(stderr, "numerical diagnostic: {}\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    fmt::print(stderr, "numerical diagnostic: {}\n", e.what());
    return 3;
  }
}
