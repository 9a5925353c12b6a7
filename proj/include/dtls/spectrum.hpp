// spectrum.hpp - Coherent emission spectrum of the induced dipole.
//
// d(omega) = (1/T) int_{tau0}^{tau0+T} exp(i omega tau) <d(tau)> dtau, with
// S(omega) ~ |d(omega)|^2 reported in units of mu^2. Frequencies are in
// units of omega_L.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "dtls/model.hpp"

namespace dtls::spectrum {

inline constexpr int kMinSamplesPerPeriod = 64;
/// Peaks weaker than this (times mu^2) are left out of the analytic catalog.
inline constexpr double kIntensityFloor = 1e-30;

enum class PeakClass { LowFrequency, HyperRaman, OddHarmonic };

std::string to_string(PeakClass c);

struct SpectralPeak {
  double omega = 0.0;
  double intensity = 0.0;
  PeakClass peak_class = PeakClass::OddHarmonic;
  int n = 0;
};

struct SpectrumPoint {
  double omega = 0.0;
  double intensity = 0.0;
};

/// Trapezoid quadrature of (1/T) int exp(i omega tau) s(tau) dtau over
/// [tau0, tau0 + window] for s sampled at tau_start + k dtau. The window must
/// be a whole number of drive periods, both ends must fall on samples, and
/// the sampling must give at least kMinSamplesPerPeriod points per period.
/// Violations throw std::invalid_argument.
complex fourier_component(std::span<const double> signal, double tau_start, double dtau, double omega, double tau0,
                          double window);

/// |d(omega)|^2 of the trajectory's dipole for each omega >= 0. The
/// trajectory grid must be uniform.
std::vector<SpectrumPoint> emission_spectrum(const Trajectory& traj, std::span<const double> omega_grid, double tau0,
                                             double window);

/// Closed-form first-order line catalog for a constant envelope: the slow
/// line at delta Lambda_0, hyper-Raman lines at 2n -+ delta Lambda_0
/// (n = 1..n_max) and odd harmonics 2n+1 (n = 0..n_max), sorted by omega.
/// Throws std::invalid_argument for a non-constant envelope.
std::vector<SpectralPeak> analytic_peaks(const SystemParams& params, const InitialState& init, int n_max);

/// Plateau cutoff: one past the last n at which |J_n(zeta)| is at least 1e-3
/// times the mean |J_n(zeta)| over n in [1, zeta/2]. The last, partial order
/// in that range enters with a fractional weight, which keeps the result
/// nondecreasing in zeta. Requires zeta >= 1.
int cutoff_index(double zeta);

/// Transient skip before the analysis window: 0 for a constant envelope,
/// five turn-on time constants otherwise.
double default_tau0(const Envelope& envelope);

}  // namespace dtls::spectrum
