#include "spindec/noise.hpp"

#include "spindec/rng.hpp"

#include <unsupported/Eigen/FFT>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>

namespace spindec {

namespace {

constexpr double k_pi = std::numbers::pi;
constexpr double k_preset_gamma = 100.0;  // 1/s

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(k_pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
}

// Symmetric DFT grid -floor(n/2) .. ceil(n/2)-1 in units of 2 pi/(n tau).
std::vector<double> frequency_grid(int n, double tau) {
  const double d_omega = 2.0 * k_pi / (n * tau);
  std::vector<double> grid(static_cast<std::size_t>(n));
  const int half = n / 2;
  for (int m = 0; m < n; ++m) {
    grid[static_cast<std::size_t>(m)] = (m - half) * d_omega;
  }
  return grid;
}

}  // namespace

std::string to_string(ReservoirLabel label) {
  switch (label) {
    case ReservoirLabel::R1: return "R1";
    case ReservoirLabel::R2: return "R2";
    case ReservoirLabel::R3: return "R3";
    case ReservoirLabel::R4: return "R4";
    case ReservoirLabel::Custom: return "custom";
  }
  return "custom";
}

Reservoir make_reservoir(double gamma, double omega0, ReservoirLabel label) {
  if (gamma <= 0.0) throw InvalidOperandError("reservoir: gamma must be positive");
  if (omega0 < 0.0) throw InvalidOperandError("reservoir: omega0 must be >= 0");
  return {gamma, omega0, gamma, label};
}

double lorentzian_psd(double omega, const Reservoir& r) {
  const double d = std::abs(omega) - r.omega0;
  return r.kappa * r.gamma / (r.gamma * r.gamma + d * d);
}

double correlation_psd(double omega, const Reservoir& r) {
  const double g2 = r.gamma * r.gamma;
  const double dm = omega - r.omega0;
  const double dp = omega + r.omega0;
  return r.gamma / (g2 + dm * dm) + r.gamma / (g2 + dp * dp);
}

NoiseTrace generate_trace(const Reservoir& r, int n_segments, double tau,
                          std::uint64_t seed) {
  if (n_segments < 1) throw InvalidOperandError("generate_trace: n_segments >= 1");
  if (tau <= 0.0) throw InvalidOperandError("generate_trace: tau must be positive");

  const double a = std::exp(-r.gamma * tau);
  const double b = std::sqrt(1.0 - a * a);
  const int burn_in = static_cast<int>(std::ceil(10.0 / (r.gamma * tau)));

  std::mt19937_64 gen(seed);
  Complex z = complex_gaussian(gen);  // stationary initial condition
  for (int j = 0; j < burn_in; ++j) {
    z = a * z + b * complex_gaussian(gen);
  }

  NoiseTrace trace{tau, std::vector<double>(static_cast<std::size_t>(n_segments)),
                   seed};
  double sum_sq = 0.0;
  for (int j = 0; j < n_segments; ++j) {
    const double s = (z * std::polar(1.0, r.omega0 * tau * j)).real();
    trace.values[static_cast<std::size_t>(j)] = s;
    sum_sq += s * s;
    z = a * z + b * complex_gaussian(gen);
  }
  const double rms = std::sqrt(sum_sq / n_segments);
  if (rms <= 0.0) throw InvalidOperandError("generate_trace: degenerate zero trace");
  for (double& v : trace.values) v /= rms;
  return trace;
}

std::vector<NoiseTrace> generate_ensemble(const Reservoir& r, int n_segments,
                                          double tau, std::uint64_t master_seed,
                                          int n_traces) {
  std::vector<NoiseTrace> traces;
  traces.reserve(static_cast<std::size_t>(n_traces));
  for (int k = 0; k < n_traces; ++k) {
    traces.push_back(generate_trace(r, n_segments, tau, hash_seed(master_seed,
                                                                  static_cast<std::uint64_t>(k))));
  }
  return traces;
}

SpectrumEstimate estimate_psd(std::span<const NoiseTrace> traces) {
  if (traces.empty()) throw InvalidOperandError("estimate_psd: empty trace list");
  const int n = static_cast<int>(traces.front().values.size());
  const double tau = traces.front().tau;
  for (const NoiseTrace& t : traces) {
    if (static_cast<int>(t.values.size()) != n || t.tau != tau) {
      throw InvalidOperandError("estimate_psd: mismatched trace grids");
    }
  }

  Eigen::FFT<double> fft;
  std::vector<double> accum(static_cast<std::size_t>(n), 0.0);
  std::vector<std::complex<double>> spectrum;
  for (const NoiseTrace& t : traces) {
    fft.fwd(spectrum, t.values);
    for (int k = 0; k < n; ++k) {
      accum[static_cast<std::size_t>(k)] += std::norm(spectrum[static_cast<std::size_t>(k)]);
    }
  }

  SpectrumEstimate est;
  est.frequencies = frequency_grid(n, tau);
  est.power.resize(static_cast<std::size_t>(n));
  est.n_traces = static_cast<int>(traces.size());
  const double scale = 1.0 / (static_cast<double>(n) * est.n_traces);
  const int half = n / 2;
  for (int m = 0; m < n; ++m) {
    const int k = (m - half + n) % n;  // un-shift into DFT index order
    est.power[static_cast<std::size_t>(m)] = accum[static_cast<std::size_t>(k)] * scale;
  }
  return est;
}

SpectrumEstimate expected_periodogram(const Reservoir& r, int n_segments, double tau) {
  const int n = n_segments;
  if (n < 1) throw InvalidOperandError("expected_periodogram: n_segments >= 1");

  // Covariance of the pre-normalization process on the segment grid.
  Eigen::MatrixXd sigma(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double dt = (i - j) * tau;
      const double c = std::exp(-r.gamma * dt) * std::cos(r.omega0 * dt);
      sigma(i, j) = c;
      sigma(j, i) = c;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
  const Eigen::VectorXd d = es.eigenvalues().cwiseMax(0.0);
  const Eigen::MatrixXd& u = es.eigenvectors();

  std::vector<double> nodes, weights;
  gauss_legendre(200, nodes, weights);
  const double u_scale = 5.0 * n;

  SpectrumEstimate est;
  est.frequencies = frequency_grid(n, tau);
  est.power.resize(static_cast<std::size_t>(n));
  est.n_traces = 0;

  Eigen::VectorXcd f(n);
  for (std::size_t m = 0; m < est.frequencies.size(); ++m) {
    const double omega = est.frequencies[m];
    for (int j = 0; j < n; ++j) {
      f[j] = std::polar(1.0 / std::sqrt(static_cast<double>(n)), -omega * tau * j);
    }
    const Eigen::VectorXcd proj = u.transpose() * f;
    const Eigen::VectorXd w = proj.cwiseAbs2();

    // E[P_m] = int_0^inf prod_i (1 + 2 v d_i/n)^{-1/2} sum_i w_i d_i/(1 + 2 v d_i/n) dv
    // with v = u_scale * x / (1 - x) mapped onto the Gauss-Legendre grid.
    double integral = 0.0;
    for (std::size_t q = 0; q < nodes.size(); ++q) {
      const double x = 0.5 * (nodes[q] + 1.0);  // (0, 1)
      const double wq = 0.5 * weights[q];
      const double v = u_scale * x / (1.0 - x);
      const double jac = u_scale / ((1.0 - x) * (1.0 - x));
      double log_det = 0.0;
      double trace_term = 0.0;
      for (int i = 0; i < n; ++i) {
        const double denom = 1.0 + 2.0 * v * d[i] / n;
        log_det += std::log(denom);
        trace_term += w[i] * d[i] / denom;
      }
      integral += wq * jac * std::exp(-0.5 * log_det) * trace_term;
    }
    est.power[m] = integral;
  }
  return est;
}

std::array<Reservoir, 4> reservoir_presets(const SystemModel& model_i,
                                           const SystemModel& model_ii) {
  if (model_i.params.j != model_ii.params.j) {
    throw InvalidOperandError("reservoir_presets: models disagree on J");
  }
  const double w42_i = model_i.transition_frequency(4, 2);
  const double w32_ii = model_ii.transition_frequency(3, 2);
  const double w31_i = model_i.transition_frequency(3, 1);
  const double w41_ii = model_ii.transition_frequency(4, 1);
  return {make_reservoir(k_preset_gamma, w42_i, ReservoirLabel::R1),
          make_reservoir(k_preset_gamma, w32_ii, ReservoirLabel::R2),
          make_reservoir(k_preset_gamma, 0.5 * (w31_i + w41_ii), ReservoirLabel::R3),
          make_reservoir(k_preset_gamma, 0.0, ReservoirLabel::R4)};
}

Reservoir find_reservoir_preset(const std::string& name, const SystemModel& model_i,
                                const SystemModel& model_ii) {
  const std::array<Reservoir, 4> presets = reservoir_presets(model_i, model_ii);
  if (name == "R1") return presets[0];
  if (name == "R2") return presets[1];
  if (name == "R3") return presets[2];
  if (name == "R4") return presets[3];
  throw InvalidOperandError("unknown reservoir preset: " + name);
}

void write_trace_csv(const std::string& path, const NoiseTrace& trace,
                     const Reservoir& r) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  nlohmann::json header{{"gamma", r.gamma},
                        {"omega0", r.omega0},
                        {"tau", trace.tau},
                        {"seed", trace.seed}};
  out << "# " << header.dump() << "\n";
  out << "index,value\n";
  for (std::size_t i = 0; i < trace.values.size(); ++i) {
    out << fmt::format("{},{:.17e}\n", i, trace.values[i]);
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

TraceFile read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw std::runtime_error("missing JSON header line: " + path);
  }
  const nlohmann::json header = nlohmann::json::parse(line.substr(2));
  TraceFile file;
  file.gamma = header.at("gamma").get<double>();
  file.omega0 = header.at("omega0").get<double>();
  file.trace.tau = header.at("tau").get<double>();
  file.trace.seed = header.at("seed").get<std::uint64_t>();
  std::getline(in, line);  // column header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error("malformed trace row in " + path);
    }
    file.trace.values.push_back(std::stod(line.substr(comma + 1)));
  }
  return file;
}

}  // namespace spindec
