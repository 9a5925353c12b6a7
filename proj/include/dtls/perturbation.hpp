// perturbation.hpp - Zeroth- and first-order density operator of the far
// off-resonance driven two-level system.
//
// The micromotion unitary U(tau) = exp(-i phi(tau) (s_rr - s_ll)), with
// phi = c f(tau) sin(tau), removes the fast drive phase. In the transformed
// frame the slow Hamiltonian is -(delta/2) Lambda_0 (s_lr + s_rl) with
// Lambda_0 = J_0(zeta), zeta = 2 c f(tau); the remainder is first order in
// delta (or in delta / sqrt(c f) for strong fields).

#pragma once

#include <array>
#include <vector>

#include "dtls/model.hpp"

namespace dtls::perturbation {

/// Default cut for every Bessel series.
inline constexpr double kSeriesTolerance = 1e-14;

/// How the slow coherence phase integral of Lambda_0 is formed when f varies.
enum class PhaseMode {
  Integrated,  // int_0^tau Lambda_0(s) ds, midpoint rule with step <= pi/8
  Literal,     // Lambda_0(tau) * tau
};

enum class Frame {
  Lab,          // rho = U^+ rho' U
  Transformed,  // rho'
};

struct PhaseState {
  double phi = 0.0;
  double zeta = 0.0;
  double lambda0 = 1.0;
  double accumulated_phase = 0.0;  // int_0^tau Lambda_0 (per PhaseMode)
};

/// phi(tau) = c f(tau) sin(tau).
double phase(double tau, const SystemParams& params);

double accumulated_lambda0(double tau, const SystemParams& params, PhaseMode mode = PhaseMode::Integrated);

PhaseState phase_state(double tau, const SystemParams& params, PhaseMode mode = PhaseMode::Integrated);

/// U^+(tau) rho' U(tau). Input and output are position-basis matrices.
DensityMatrix micromotion_transform(double tau, const SystemParams& params, const DensityMatrix& rho_prime);

/// Zeroth order: populations of U^+|1>, U^+|2> frozen, coherence rotating
/// with delta * accumulated Lambda_0. Returned in the energy basis.
DensityMatrix zeroth_order(double tau, const SystemParams& params, const InitialState& init,
                           Frame frame = Frame::Lab, PhaseMode mode = PhaseMode::Integrated);

/// 1/2 + |rho12(0)| cos(delta Theta(tau) + phase).
double rho_rr_zeroth_order(double tau, const SystemParams& params, const InitialState& init,
                           PhaseMode mode = PhaseMode::Integrated);

struct FloquetStates {
  std::array<complex, 2> first;   // U^+|1> in {|1>, |2>}
  std::array<complex, 2> second;  // U^+|2>
  double quasienergy_first = 0.0;   // -delta Lambda_0 / 2
  double quasienergy_second = 0.0;  // +delta Lambda_0 / 2
};

FloquetStates floquet_states(double tau, const SystemParams& params);

/// First-order population shift function (real).
double alpha(double tau, const SystemParams& params, const InitialState& init, double tol = kSeriesTolerance,
             PhaseMode mode = PhaseMode::Integrated);

/// First-order coherence shift function.
complex beta(double tau, const SystemParams& params, const InitialState& init, double tol = kSeriesTolerance,
             PhaseMode mode = PhaseMode::Integrated);

struct FirstOrderResult {
  DensityMatrix rho;  // energy basis
  double min_eigenvalue = 0.0;
  double epsilon = 0.0;
  /// min_eigenvalue < -10 epsilon^2; reported, never clamped.
  bool positivity_flag = false;
};

FirstOrderResult first_order(double tau, const SystemParams& params, const InitialState& init,
                             double tol = kSeriesTolerance, Frame frame = Frame::Lab,
                             PhaseMode mode = PhaseMode::Integrated);

/// The three pieces of the closed-form first-order population rho_rr.
struct PopulationTerms {
  double zeroth = 0.0;       // 1/2 + |rho12| cos(delta Theta + phase)
  double odd_series = 0.0;   // population-difference series, odd harmonics
  double even_series = 0.0;  // coherence series, even harmonics
  double total() const { return zeroth + odd_series + even_series; }
};

PopulationTerms rho_rr_first_order_terms(double tau, const SystemParams& params, const InitialState& init,
                                         double tol = kSeriesTolerance, PhaseMode mode = PhaseMode::Integrated);

double rho_rr_first_order(double tau, const SystemParams& params, const InitialState& init,
                          double tol = kSeriesTolerance, PhaseMode mode = PhaseMode::Integrated);

/// c = z_k / 2 for the first `count` zeros z_k of J_0 (Lambda_0 = 0 at f = 1).
std::vector<double> trapping_couplings(int count);

}  // namespace dtls::perturbation
