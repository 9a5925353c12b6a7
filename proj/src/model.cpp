// model.cpp

#include "dtls/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dtls {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

// ---------------------------------------------------------------------------
// Envelope

Envelope::Envelope(Shape shape) : shape_(shape) {
  std::visit(overloaded{
                 [](ConstantEnvelope) {},
                 [](ExpTurnOn e) {
                   if (!finite_positive(e.rate)) throw std::invalid_argument("exp_turn_on rate must be > 0");
                 },
                 [](SinSqRamp e) {
                   if (!finite_positive(e.ramp)) throw std::invalid_argument("sinsq_ramp length must be > 0");
                 },
             },
             shape_);
}

double Envelope::operator()(double tau) const {
  const double t = std::max(tau, 0.0);
  return std::visit(overloaded{
                        [](ConstantEnvelope) { return 1.0; },
                        [t](ExpTurnOn e) { return -std::expm1(-t / e.rate); },
                        [t](SinSqRamp e) {
                          if (t >= e.ramp) return 1.0;
                          const double s = std::sin(0.5 * std::numbers::pi * t / e.ramp);
                          return s * s;
                        },
                    },
                    shape_);
}

double Envelope::max_slope() const {
  return std::visit(overloaded{
                        [](ConstantEnvelope) { return 0.0; },
                        [](ExpTurnOn e) { return 1.0 / e.rate; },
                        [](SinSqRamp e) { return 0.5 * std::numbers::pi / e.ramp; },
                    },
                    shape_);
}

double Envelope::time_scale() const {
  return std::visit(overloaded{
                        [](ConstantEnvelope) { return 0.0; },
                        [](ExpTurnOn e) { return e.rate; },
                        [](SinSqRamp e) { return e.ramp; },
                    },
                    shape_);
}

std::string Envelope::to_string() const {
  return std::visit(overloaded{
                        [](ConstantEnvelope) { return std::string("constant"); },
                        [](ExpTurnOn e) { return "exp_turn_on:" + shortest(e.rate); },
                        [](SinSqRamp e) { return "sinsq_ramp:" + shortest(e.ramp); },
                    },
                    shape_);
}

Envelope Envelope::parse(const std::string& text) {
  if (text == "constant") return Envelope{};
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("unknown envelope '" + text + "'");
  const std::string kind = text.substr(0, colon);
  const std::string arg = text.substr(colon + 1);
  double value = 0.0;
  auto [end, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), value);
  if (ec != std::errc{} || end != arg.data() + arg.size())
    throw std::invalid_argument("bad envelope parameter '" + arg + "'");
  if (kind == "exp_turn_on") return Envelope{ExpTurnOn{value}};
  if (kind == "sinsq_ramp") return Envelope{SinSqRamp{value}};
  throw std::invalid_argument("unknown envelope '" + kind + "'");
}

bool operator==(const Envelope& a, const Envelope& b) {
  return a.shape_.index() == b.shape_.index() && a.time_scale() == b.time_scale();
}

void SystemParams::validate() const {
  if (!std::isfinite(delta_ratio) || delta_ratio < 0.0)
    throw std::invalid_argument("delta_ratio must be finite and >= 0");
  if (!std::isfinite(coupling_ratio) || coupling_ratio < 0.0)
    throw std::invalid_argument("coupling_ratio must be finite and >= 0");
  if (!finite_positive(dipole)) throw std::invalid_argument("dipole must be finite and > 0");
}

// ---------------------------------------------------------------------------
// States and bases

std::array<double, 2> Hermitian2::eigenvalues() const {
  const double mean = 0.5 * (a11 + a22);
  const double r = std::hypot(0.5 * (a11 - a22), std::abs(a12));
  return {mean - r, mean + r};
}

Hermitian2 swap_basis(const Hermitian2& m) {
  const double half_sum = 0.5 * (m.a11 + m.a22);
  return {half_sum + m.a12.real(), half_sum - m.a12.real(), complex(0.5 * (m.a11 - m.a22), -m.a12.imag())};
}

bool DensityMatrix::is_physical(double tol) const {
  return std::abs(trace() - 1.0) <= tol && std::norm(rho12) <= rho11 * rho22 + tol && rho11 >= -tol &&
         rho22 >= -tol;
}

DensityMatrix to_position_basis(const DensityMatrix& rho) {
  if (rho.basis != Basis::Energy) throw std::invalid_argument("to_position_basis: input is not in the energy basis");
  const Hermitian2 m = swap_basis(rho.as_matrix());
  return {m.a11, m.a22, m.a12, Basis::Position};
}

DensityMatrix to_energy_basis(const DensityMatrix& rho) {
  if (rho.basis != Basis::Position) throw std::invalid_argument("to_energy_basis: input is not in the position basis");
  const Hermitian2 m = swap_basis(rho.as_matrix());
  return {m.a11, m.a22, m.a12, Basis::Energy};
}

double rho_rr(const DensityMatrix& rho) {
  if (rho.basis == Basis::Position) return rho.rho11;
  return 0.5 + rho.rho12.real();
}

double rho_ll(const DensityMatrix& rho) { return 1.0 - rho_rr(rho); }

void InitialState::validate() const {
  if (!std::isfinite(rho11) || rho11 < 0.0 || rho11 > 1.0) throw std::invalid_argument("rho11 must lie in [0, 1]");
  if (!std::isfinite(coherence_mag) || coherence_mag < 0.0)
    throw std::invalid_argument("coherence_mag must be finite and >= 0");
  if (!std::isfinite(coherence_phase)) throw std::invalid_argument("coherence_phase must be finite");
  if (coherence_mag * coherence_mag > rho11 * (1.0 - rho11) + 1e-12)
    throw std::invalid_argument("coherence_mag^2 exceeds rho11 (1 - rho11)");
}

InitialState InitialState::left() { return {0.5, 0.5, std::numbers::pi}; }

// ---------------------------------------------------------------------------
// Validity

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::FarOffResonance: return "far-off-resonance";
    case Regime::StrongField: return "strong-field";
    case Regime::Both: return "both";
    case Regime::Neither: return "neither";
  }
  return "neither";
}

ValidityReport validity_report(const SystemParams& params, double tau_max) {
  if (!finite_positive(tau_max)) throw std::invalid_argument("validity_report: tau_max must be > 0");
  constexpr int kSamples = 4096;

  ValidityReport report;
  double kept_min = std::numeric_limits<double>::infinity();
  double overall_max = 0.0;
  for (int i = 0; i <= kSamples; ++i) {
    const double f = params.envelope(tau_max * i / kSamples);
    overall_max = std::max(overall_max, f);
    if (f < kRampFloor)
      report.ramp_excluded = true;
    else
      kept_min = std::min(kept_min, f);
  }
  report.f_min = std::isfinite(kept_min) ? kept_min : overall_max;

  const double drive = params.coupling_ratio * report.f_min;
  report.epsilon_offres = params.delta_ratio;
  report.epsilon_strong =
      drive > 0.0 ? params.delta_ratio / std::sqrt(drive) : std::numeric_limits<double>::infinity();

  const bool offres = report.epsilon_offres < kSmallParameterThreshold;
  const bool strong = std::sqrt(drive) > kStrongFieldThreshold && report.epsilon_strong < kSmallParameterThreshold;
  if (offres && strong)
    report.regime = Regime::Both;
  else if (offres)
    report.regime = Regime::FarOffResonance;
  else if (strong)
    report.regime = Regime::StrongField;
  else
    report.regime = Regime::Neither;
  report.epsilon = strong ? std::min(report.epsilon_offres, report.epsilon_strong) : report.epsilon_offres;
  return report;
}

std::vector<double> Trajectory::rho_rr_series() const {
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(rho_rr(s));
  return out;
}

}  // namespace dtls
