// perturbation.cpp

#include "dtls/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dtls/specfun.hpp"

namespace dtls::perturbation {

namespace {

constexpr double kQuadratureStep = std::numbers::pi / 8.0;

void check_tol(double tol) {
  if (!(tol >= 1e-14 && tol < 1.0)) throw std::invalid_argument("series tolerance must be in [1e-14, 1)");
}

// J_0 ... J_N(zeta) with N from the truncation rule.
std::vector<double> bessel_terms(double zeta, double tol) {
  return specfun::bessel_j_sequence(specfun::truncation_order(zeta, tol), zeta);
}

}  // namespace

double phase(double tau, const SystemParams& params) {
  return params.coupling_ratio * params.envelope(tau) * std::sin(tau);
}

double accumulated_lambda0(double tau, const SystemParams& params, PhaseMode mode) {
  if (tau <= 0.0) return 0.0;
  if (params.envelope.is_constant() || mode == PhaseMode::Literal)
    return specfun::bessel_j(0, params.zeta(tau)) * tau;
  const auto n = static_cast<long long>(std::ceil(tau / kQuadratureStep));
  const double h = tau / static_cast<double>(n);
  double sum = 0.0;
  for (long long i = 0; i < n; ++i) sum += specfun::bessel_j(0, params.zeta((static_cast<double>(i) + 0.5) * h));
  return sum * h;
}

PhaseState phase_state(double tau, const SystemParams& params, PhaseMode mode) {
  PhaseState s;
  s.phi = phase(tau, params);
  s.zeta = params.zeta(tau);
  s.lambda0 = specfun::bessel_j(0, s.zeta);
  s.accumulated_phase = accumulated_lambda0(tau, params, mode);
  return s;
}

DensityMatrix micromotion_transform(double tau, const SystemParams& params, const DensityMatrix& rho_prime) {
  if (rho_prime.basis != Basis::Position)
    throw std::invalid_argument("micromotion_transform: input must be in the position basis");
  DensityMatrix out = rho_prime;
  out.rho12 = rho_prime.rho12 * std::polar(1.0, 2.0 * phase(tau, params));
  return out;
}

namespace {

DensityMatrix to_lab(double tau, const SystemParams& params, const DensityMatrix& rho_prime) {
  return to_energy_basis(micromotion_transform(tau, params, to_position_basis(rho_prime)));
}

}  // namespace

DensityMatrix zeroth_order(double tau, const SystemParams& params, const InitialState& init, Frame frame,
                           PhaseMode mode) {
  const double theta = params.delta_ratio * accumulated_lambda0(tau, params, mode);
  const DensityMatrix rho_prime{init.rho11, init.rho22(), init.rho12() * std::polar(1.0, theta), Basis::Energy};
  return frame == Frame::Lab ? to_lab(tau, params, rho_prime) : rho_prime;
}

double rho_rr_zeroth_order(double tau, const SystemParams& params, const InitialState& init, PhaseMode mode) {
  const double theta = params.delta_ratio * accumulated_lambda0(tau, params, mode);
  return 0.5 + init.coherence_mag * std::cos(theta + init.coherence_phase);
}

FloquetStates floquet_states(double tau, const SystemParams& params) {
  const double phi = phase(tau, params);
  const double c = std::cos(phi), s = std::sin(phi);
  const double half_split = 0.5 * params.delta_ratio * specfun::bessel_j(0, params.zeta(tau));
  FloquetStates out;
  out.first = {complex(c, 0.0), complex(0.0, s)};
  out.second = {complex(s, 0.0), complex(0.0, -c)};
  out.quasienergy_first = -half_split;
  out.quasienergy_second = half_split;
  return out;
}

double alpha(double tau, const SystemParams& params, const InitialState& init, double tol, PhaseMode mode) {
  check_tol(tol);
  const double theta = params.delta_ratio * accumulated_lambda0(tau, params, mode);
  const auto J = bessel_terms(params.zeta(tau), tol);
  const complex z = init.rho12();
  double sum = 0.0;
  for (std::size_t m = 1; m < J.size(); m += 2) {
    const double mt = static_cast<double>(m) * tau;
    const complex bracket = std::polar(1.0, mt + theta) + std::polar(1.0, theta - mt) - 2.0;
    // {X + h.c.} = 2 Re X; the overall 1/2 cancels it.
    sum += J[m] / static_cast<double>(m) * std::real(z * bracket);
  }
  return sum;
}

complex beta(double tau, const SystemParams& params, const InitialState& init, double tol, PhaseMode mode) {
  check_tol(tol);
  const double theta = params.delta_ratio * accumulated_lambda0(tau, params, mode);
  const auto J = bessel_terms(params.zeta(tau), tol);
  const double pop_diff = init.rho22() - init.rho11;
  const complex z = init.rho12();

  complex odd{};
  for (std::size_t m = 1; m < J.size(); m += 2) {
    const double mt = static_cast<double>(m) * tau;
    odd += J[m] / static_cast<double>(m) * (std::polar(1.0, mt - theta) + std::polar(1.0, -mt - theta) - 2.0);
  }
  complex even{};
  for (std::size_t m = 2; m < J.size(); m += 2)
    even += J[m] / static_cast<double>(m) * std::sin(static_cast<double>(m) * tau);

  return 0.5 * pop_diff * odd + complex(0.0, 2.0) * z * even;
}

FirstOrderResult first_order(double tau, const SystemParams& params, const InitialState& init, double tol,
                             Frame frame, PhaseMode mode) {
  const double delta = params.delta_ratio;
  const double theta = delta * accumulated_lambda0(tau, params, mode);
  const double a = alpha(tau, params, init, tol, mode);
  const complex b = beta(tau, params, init, tol, mode);

  const DensityMatrix rho_prime{init.rho11 + delta * a, init.rho22() - delta * a,
                                (init.rho12() + delta * b) * std::polar(1.0, theta), Basis::Energy};

  FirstOrderResult result;
  result.rho = frame == Frame::Lab ? to_lab(tau, params, rho_prime) : rho_prime;
  result.min_eigenvalue = result.rho.eigenvalues()[0];
  const double drive = params.coupling_ratio * params.envelope(tau);
  result.epsilon = drive > 0.0 ? std::min(delta, delta / std::sqrt(drive)) : delta;
  result.positivity_flag = result.min_eigenvalue < -10.0 * result.epsilon * result.epsilon;
  return result;
}

PopulationTerms rho_rr_first_order_terms(double tau, const SystemParams& params, const InitialState& init,
                                         double tol, PhaseMode mode) {
  check_tol(tol);
  const double delta = params.delta_ratio;
  const double theta = delta * accumulated_lambda0(tau, params, mode);
  const auto J = bessel_terms(params.zeta(tau), tol);
  const double mag = init.coherence_mag;
  const double slow = theta + init.coherence_phase;

  PopulationTerms terms;
  terms.zeroth = 0.5 + mag * std::cos(slow);

  const double pop_diff = init.rho22() - init.rho11;
  if (pop_diff != 0.0) {
    double s = 0.0;
    const double cos_theta = std::cos(theta);
    for (std::size_t m = 1; m < J.size(); m += 2)
      s += J[m] / static_cast<double>(m) * (std::cos(static_cast<double>(m) * tau) - cos_theta);
    terms.odd_series = delta * pop_diff * s;
  }

  double s = 0.0;
  for (std::size_t m = 2; m < J.size(); m += 2)
    s += J[m] / static_cast<double>(m) * std::sin(static_cast<double>(m) * tau);
  terms.even_series = -2.0 * delta * mag * s * std::sin(slow);
  return terms;
}

double rho_rr_first_order(double tau, const SystemParams& params, const InitialState& init, double tol,
                          PhaseMode mode) {
  return rho_rr_first_order_terms(tau, params, init, tol, mode).total();
}

std::vector<double> trapping_couplings(int count) {
  auto zeros = specfun::j0_zeros(count);
  for (double& z : zeros) z *= 0.5;
  return zeros;
}

}  // namespace dtls::perturbation
