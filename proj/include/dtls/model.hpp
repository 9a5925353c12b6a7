// model.hpp - Parameters, envelopes, states and basis changes for the
// laser-driven two-level system.
//
// Everything is dimensionless: time is tau = omega_L t, energies and
// frequencies are in units of omega_L. The energy basis is {|1>, |2>}; the
// position basis is {|r>, |l>} with |r> = (|1> + |2>)/sqrt(2) and
// |l> = (|1> - |2>)/sqrt(2).

#pragma once

#include <array>
#include <complex>
#include <string>
#include <variant>
#include <vector>

namespace dtls {

using complex = std::complex<double>;

/// f(tau) = 1.
struct ConstantEnvelope {};

/// f(tau) = 1 - exp(-tau / rate).
struct ExpTurnOn {
  double rate;
};

/// f(tau) = sin^2(pi tau / (2 ramp)) for tau < ramp, 1 afterwards.
struct SinSqRamp {
  double ramp;
};

/// Slowly varying pulse envelope f(tau) in [0, 1].
class Envelope {
 public:
  using Shape = std::variant<ConstantEnvelope, ExpTurnOn, SinSqRamp>;

  Envelope() = default;
  Envelope(Shape shape);  // NOLINT: implicit by intent

  double operator()(double tau) const;

  /// Upper bound of |df/dtau|.
  double max_slope() const;
  bool is_constant() const { return std::holds_alternative<ConstantEnvelope>(shape_); }
  /// Characteristic turn-on time (rate or ramp length); 0 for a constant envelope.
  double time_scale() const;

  const Shape& shape() const { return shape_; }
  /// constant | exp_turn_on:<rate> | sinsq_ramp:<len>
  std::string to_string() const;
  static Envelope parse(const std::string& text);

  friend bool operator==(const Envelope& a, const Envelope& b);

 private:
  Shape shape_{ConstantEnvelope{}};
};

struct SystemParams {
  double delta_ratio = 0.2;     // Delta_0 / omega_L; 0 allowed (degenerate levels)
  double coupling_ratio = 0.0;  // Omega_0 / omega_L
  double dipole = 1.0;          // mu
  Envelope envelope{};

  /// Throws std::invalid_argument if any field is out of range.
  void validate() const;
  /// zeta = 2 (Omega_0/omega_L) f(tau).
  double zeta(double tau) const { return 2.0 * coupling_ratio * envelope(tau); }

  bool operator==(const SystemParams&) const = default;
};

enum class Basis { Energy, Position };

/// Hermitian 2x2 matrix stored by its upper triangle.
struct Hermitian2 {
  double a11 = 0.0;
  double a22 = 0.0;
  complex a12{};

  complex a21() const { return std::conj(a12); }
  double trace() const { return a11 + a22; }
  /// Ascending eigenvalues.
  std::array<double, 2> eigenvalues() const;
};

/// Conjugation by the (self-inverse) change of basis between {|1>,|2>} and
/// {|r>,|l>}.
Hermitian2 swap_basis(const Hermitian2& m);

/// 2x2 density matrix. rho12 is the (first, second) element of whichever
/// basis the tag names; rho21 = conj(rho12).
struct DensityMatrix {
  double rho11 = 1.0;
  double rho22 = 0.0;
  complex rho12{};
  Basis basis = Basis::Energy;

  complex rho21() const { return std::conj(rho12); }
  double trace() const { return rho11 + rho22; }
  /// Tr rho^2.
  double purity() const { return rho11 * rho11 + rho22 * rho22 + 2.0 * std::norm(rho12); }
  std::array<double, 2> eigenvalues() const { return as_matrix().eigenvalues(); }
  Hermitian2 as_matrix() const { return {rho11, rho22, rho12}; }

  /// Unit trace within tol and |rho12|^2 <= rho11 rho22 + tol.
  bool is_physical(double tol = 1e-12) const;
};

/// Energy -> position basis. Throws std::invalid_argument on a position-basis input.
DensityMatrix to_position_basis(const DensityMatrix& rho);
/// Position -> energy basis. Throws std::invalid_argument on an energy-basis input.
DensityMatrix to_energy_basis(const DensityMatrix& rho);

/// <r|rho|r>, for either basis tag.
double rho_rr(const DensityMatrix& rho);
/// <l|rho|l> = 1 - rho_rr for unit-trace states.
double rho_ll(const DensityMatrix& rho);

/// Initial condition, rho12(0) = coherence_mag * exp(i coherence_phase).
struct InitialState {
  double rho11 = 1.0;
  double coherence_mag = 0.0;
  double coherence_phase = 0.0;

  void validate() const;
  complex rho12() const { return std::polar(coherence_mag, coherence_phase); }
  double rho22() const { return 1.0 - rho11; }
  DensityMatrix density() const { return {rho11, rho22(), rho12(), Basis::Energy}; }

  static InitialState ground() { return {1.0, 0.0, 0.0}; }
  static InitialState right() { return {0.5, 0.5, 0.0}; }
  static InitialState left();
  static InitialState maximally_mixed() { return {0.5, 0.0, 0.0}; }

  bool operator==(const InitialState&) const = default;
};

enum class Regime { FarOffResonance, StrongField, Both, Neither };

std::string to_string(Regime regime);

struct ValidityReport {
  double epsilon_offres = 0.0;  // Delta_0 / omega_L
  double epsilon_strong = 0.0;  // Delta_0 / sqrt(omega_L Omega_0 f_min); inf without drive
  double f_min = 0.0;
  Regime regime = Regime::Neither;
  double epsilon = 0.0;
  /// Part of [0, tau_max] had f < 0.1 and was left out of f_min.
  bool ramp_excluded = false;
};

inline constexpr double kSmallParameterThreshold = 0.3;
inline constexpr double kStrongFieldThreshold = 2.0;
inline constexpr double kRampFloor = 0.1;

ValidityReport validity_report(const SystemParams& params, double tau_max);

struct Trajectory {
  std::vector<double> tau_grid;
  std::vector<DensityMatrix> states;
  SystemParams params;

  std::size_t size() const { return tau_grid.size(); }
  std::vector<double> rho_rr_series() const;
};

}  // namespace dtls
