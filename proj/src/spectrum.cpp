// spectrum.cpp

#include "dtls/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dtls/evolver.hpp"
#include "dtls/specfun.hpp"

namespace dtls::spectrum {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Nearest integer to v, or throws if v is not within tol of one.
long long as_index(double v, double tol, const char* what) {
  const double r = std::round(v);
  if (std::abs(v - r) > tol) throw std::invalid_argument(what);
  return static_cast<long long>(r);
}

}  // namespace

std::string to_string(PeakClass c) {
  switch (c) {
    case PeakClass::LowFrequency: return "low_frequency";
    case PeakClass::HyperRaman: return "hyper_raman";
    case PeakClass::OddHarmonic: return "odd_harmonic";
  }
  return "odd_harmonic";
}

complex fourier_component(std::span<const double> signal, double tau_start, double dtau, double omega, double tau0,
                          double window) {
  if (signal.empty()) throw std::invalid_argument("fourier_component: empty signal");
  if (!(dtau > 0.0) || !std::isfinite(dtau)) throw std::invalid_argument("fourier_component: dtau must be > 0");
  if (!(window > 0.0)) throw std::invalid_argument("fourier_component: window must be > 0");

  const double periods = window / kTwoPi;
  if (std::abs(periods - std::round(periods)) > 1e-9 * std::max(1.0, periods) || std::round(periods) < 1.0)
    throw std::invalid_argument("fourier_component: window is not a whole number of drive periods");
  if (kTwoPi / dtau < kMinSamplesPerPeriod * (1.0 - 1e-9))
    throw std::invalid_argument("fourier_component: fewer than 64 samples per drive period");

  const long long first = as_index((tau0 - tau_start) / dtau, 1e-6, "fourier_component: tau0 is not on the sample grid");
  const long long count = as_index(window / dtau, 1e-6, "fourier_component: window is not a whole number of samples");
  const long long last = first + count;
  if (first < 0 || last >= static_cast<long long>(signal.size()))
    throw std::invalid_argument("fourier_component: window extends beyond the sampled range");

  complex sum{};
  for (long long k = first; k <= last; ++k) {
    const double tau = tau_start + static_cast<double>(k) * dtau;
    const double w = (k == first || k == last) ? 0.5 : 1.0;
    sum += w * signal[static_cast<std::size_t>(k)] * std::polar(1.0, omega * tau);
  }
  return sum * dtau / window;
}

std::vector<SpectrumPoint> emission_spectrum(const Trajectory& traj, std::span<const double> omega_grid, double tau0,
                                             double window) {
  if (traj.size() < 2) throw std::invalid_argument("emission_spectrum: trajectory too short");
  const double dtau = (traj.tau_grid.back() - traj.tau_grid.front()) / static_cast<double>(traj.size() - 1);
  for (std::size_t i = 1; i < traj.size(); ++i)
    if (std::abs(traj.tau_grid[i] - traj.tau_grid[i - 1] - dtau) > 1e-9 * dtau)
      throw std::invalid_argument("emission_spectrum: trajectory grid is not uniform");

  const std::vector<double> dipole = dipole_series(traj);
  std::vector<SpectrumPoint> out;
  out.reserve(omega_grid.size());
  for (double omega : omega_grid) {
    if (omega < 0.0) throw std::invalid_argument("emission_spectrum: omega must be >= 0");
    const complex d = fourier_component(dipole, traj.tau_grid.front(), dtau, omega, tau0, window);
    out.push_back({omega, std::norm(d)});
  }
  return out;
}

std::vector<SpectralPeak> analytic_peaks(const SystemParams& params, const InitialState& init, int n_max) {
  if (!params.envelope.is_constant())
    throw std::invalid_argument("analytic_peaks: the line catalog needs a constant envelope");
  if (n_max < 1) throw std::invalid_argument("analytic_peaks: n_max must be >= 1");
  params.validate();
  init.validate();

  const double zeta = params.zeta(0.0);
  const auto J = specfun::bessel_j_sequence(2 * n_max + 1, zeta);
  const double mu = params.dipole;
  const double delta = params.delta_ratio;
  const double slow = std::abs(delta * J[0]);
  const double floor = kIntensityFloor * mu * mu;

  std::vector<SpectralPeak> peaks;
  auto emit = [&](double omega, double intensity, PeakClass c, int n) {
    if (intensity >= floor) peaks.push_back({omega, intensity, c, n});
  };

  const double mag = init.coherence_mag;
  emit(slow, mu * mu * mag * mag, PeakClass::LowFrequency, 0);

  for (int n = 1; n <= n_max; ++n) {
    const double amp = mu * delta * mag * J[static_cast<std::size_t>(2 * n)] / (2.0 * n);
    emit(2.0 * n - slow, amp * amp, PeakClass::HyperRaman, n);
    if (slow > 0.0) emit(2.0 * n + slow, amp * amp, PeakClass::HyperRaman, n);
  }

  const double pop_diff = init.rho22() - init.rho11;
  for (int n = 0; n <= n_max; ++n) {
    const double amp = mu * delta * pop_diff * J[static_cast<std::size_t>(2 * n + 1)] / (2.0 * n + 1.0);
    emit(2.0 * n + 1.0, amp * amp, PeakClass::OddHarmonic, n);
  }

  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const SpectralPeak& a, const SpectralPeak& b) { return a.omega < b.omega; });
  return peaks;
}

int cutoff_index(double zeta) {
  if (!std::isfinite(zeta) || zeta < 1.0) throw std::domain_error("cutoff_index: requires zeta >= 1");
  const auto J = specfun::bessel_j_sequence(specfun::truncation_order(zeta, 1e-15) + 1, zeta);
  // Average over the continuous range [1, zeta/2]: orders 1..m in full and
  // order m+1 with the fractional weight zeta/2 - m, so the threshold moves
  // continuously with zeta.
  const double half = 0.5 * zeta;
  double mean = std::abs(J[1]);
  if (half >= 1.0) {
    const auto m = static_cast<std::size_t>(std::floor(half));
    const double w = half - static_cast<double>(m);
    double sum = 0.0;
    for (std::size_t n = 1; n <= m; ++n) sum += std::abs(J[n]);
    sum += w * std::abs(J[m + 1]);
    mean = sum / (static_cast<double>(m) + w);
  }

  const double threshold = 1e-3 * mean;
  int last_above = 0;
  for (std::size_t n = 1; n < J.size(); ++n)
    if (std::abs(J[n]) >= threshold) last_above = static_cast<int>(n);
  return last_above + 1;
}

double default_tau0(const Envelope& envelope) { return 5.0 * envelope.time_scale(); }

}  // namespace dtls::spectrum
