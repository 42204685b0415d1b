#pragma once

#include "spindec/system.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

// Ensembles of real-valued, piecewise-constant noise traces with a prescribed
// Lorentzian power spectrum, plus spectral verification by ensemble
// periodogram averaging.
//
// Generator: exact AR(1) discretization of a complex exponential-correlation
// process, carrier-modulated and per-trace normalized to unit RMS:
//   z_{j+1} = z_j e^{-Gamma tau} + sqrt(1 - e^{-2 Gamma tau}) g_j
//   s_j     = Re(z_j e^{i omega0 j tau})
// with g_j standard complex Gaussian and a 10/Gamma burn-in.

namespace spindec {

enum class ReservoirLabel { R1, R2, R3, R4, Custom };

std::string to_string(ReservoirLabel label);

struct Reservoir {
  double gamma = 0.0;   // rad/s, Lorentzian half-width
  double omega0 = 0.0;  // rad/s, center frequency (>= 0)
  double kappa = 0.0;   // spectral strength; fixed = gamma so the peak is 1
  ReservoirLabel label = ReservoirLabel::Custom;
};

Reservoir make_reservoir(double gamma, double omega0,
                         ReservoirLabel label = ReservoirLabel::Custom);

// S(omega) = kappa Gamma / (Gamma^2 + (|omega| - omega0)^2); peak exactly 1
// with kappa = gamma. Symmetric extension: lookups use |omega|.
double lorentzian_psd(double omega, const Reservoir& r);

// Two-sided power spectrum of the unit-RMS process itself (autocorrelation
// e^{-Gamma|t|} cos(omega0 t)): mirrored Lorentzian pair, integral
// d omega / 2 pi = 1. This, not the unit-peak display shape, carries the
// physical rate scale in the master-equation branch.
double correlation_psd(double omega, const Reservoir& r);

struct NoiseTrace {
  double tau = 0.0;            // seconds per segment
  std::vector<double> values;  // unit RMS after normalization
  std::uint64_t seed = 0;
};

NoiseTrace generate_trace(const Reservoir& r, int n_segments, double tau,
                          std::uint64_t seed);

// Convenience fan-out: trace k seeded with hash_seed(master_seed, k).
std::vector<NoiseTrace> generate_ensemble(const Reservoir& r, int n_segments,
                                          double tau, std::uint64_t master_seed,
                                          int n_traces);

struct SpectrumEstimate {
  std::vector<double> frequencies;  // rad/s, symmetric grid, spacing 2pi/(n tau)
  std::vector<double> power;
  int n_traces = 0;
};

// Mean of per-trace periodograms |DFT|^2 / n: a unit-RMS white trace gives
// flat power 1 (so the grid mean is exactly 1 by Parseval). Throws on an
// empty list or mismatched (tau, n_segments).
SpectrumEstimate estimate_psd(std::span<const NoiseTrace> traces);

// Exact finite-window expectation of the normalized-trace periodogram on the
// same grid: E[s^T B1 s / (s^T s / n)] for the stationary Gaussian process,
// evaluated by eigendecomposition of the Toeplitz covariance and a 1-D
// quadrature. This is what estimate_psd converges to at finite n, including
// window leakage and the unit-RMS normalization bias.
SpectrumEstimate expected_periodogram(const Reservoir& r, int n_segments,
                                      double tau);

// R1..R4 centers: omega^I_42, omega^II_32, (omega^I_31 + omega^II_41)/2, 0;
// Gamma = 100 1/s. Throws if the two models disagree on J.
std::array<Reservoir, 4> reservoir_presets(const SystemModel& model_i,
                                           const SystemModel& model_ii);

Reservoir find_reservoir_preset(const std::string& name, const SystemModel& model_i,
                                const SystemModel& model_ii);

// CSV trace export/import: JSON header line with {gamma, omega0, tau, seed},
// then one "index,value" row per segment.
void write_trace_csv(const std::string& path, const NoiseTrace& trace,
                     const Reservoir& r);
struct TraceFile {
  NoiseTrace trace;
  double gamma = 0.0;
  double omega0 = 0.0;
};
TraceFile read_trace_csv(const std::string& path);

}  // namespace spindec
