// evolver.cpp

#include "dtls/evolver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <numbers>
#include <string>
#include <utility>

namespace dtls {

namespace {

// State vector: rho11, rho22, Re rho12, Im rho12.
using State = std::array<double, 4>;

State pack(const DensityMatrix& rho) { return {rho.rho11, rho.rho22, rho.rho12.real(), rho.rho12.imag()}; }

DensityMatrix unpack(const State& y) { return {y[0], y[1], complex(y[2], y[3]), Basis::Energy}; }

// -i [H, rho] for H = [[a, h], [h*, b]], rho = [[p, q], [q*, s]].
State liouville(const Hermitian2& H, const State& y) {
  const complex q(y[2], y[3]);
  const double dp = 2.0 * std::imag(H.a12 * std::conj(q));
  const complex dq = complex(0.0, -1.0) * ((H.a11 - H.a22) * q + H.a12 * (y[1] - y[0]));
  return {dp, -dp, dq.real(), dq.imag()};
}

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b_hat
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

class DormandPrince {
 public:
  DormandPrince(const HamiltonianFn& h, const IntegratorOptions& opt)
      : h_(h), opt_(opt), step_(opt.initial_step) {}

  // Advance y from t to t_end.
  void advance(State& y, double& t, double t_end) {
    if (!have_k1_) {
      k1_ = rhs(t, y);
      have_k1_ = true;
    }
    while (t < t_end) {
      if (++steps_ > opt_.max_steps)
        throw IntegrationError("step budget of " + std::to_string(opt_.max_steps) + " exceeded at tau = " +
                                   std::to_string(t),
                               t);
      const double remaining = t_end - t;
      const bool last = step_ >= remaining;
      const double h = last ? remaining : step_;
      if (!last && h < 1e-14 * std::max(1.0, std::abs(t)))
        throw IntegrationError("step size underflow at tau = " + std::to_string(t), t);

      State y_new, err;
      State k7;
      attempt(t, y, h, y_new, err, k7);

      double norm = 0.0;
      for (std::size_t i = 0; i < 4; ++i) {
        const double scale = opt_.abs_tol + opt_.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
        norm = std::max(norm, std::abs(err[i]) / scale);
      }

      if (norm <= 1.0) {
        t = last ? t_end : t + h;
        // Trace renormalisation; exact arithmetic would keep it at 1.
        const double tr = y_new[0] + y_new[1];
        for (double& v : y_new) v /= tr;
        y = y_new;
        k1_ = k7;
        const double grow = norm == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(norm, -0.2));
        // A clipped final step says nothing about the natural step size.
        if (!last || grow < 1.0) step_ = h * grow;
      } else {
        step_ = h * std::max(0.2, 0.9 * std::pow(norm, -0.2));
      }
    }
  }

 private:
  State rhs(double t, const State& y) const { return liouville(h_(t), y); }

  void attempt(double t, const State& y, double h, State& y_new, State& err, State& k7) const {
    State tmp;
    auto combine = [&](std::initializer_list<std::pair<double, const State*>> terms) {
      for (std::size_t i = 0; i < 4; ++i) {
        double acc = 0.0;
        for (auto [w, k] : terms) acc += w * (*k)[i];
        tmp[i] = y[i] + h * acc;
      }
      return tmp;
    };
    const State& k1 = k1_;
    const State k2 = rhs(t + c2 * h, combine({{a21, &k1}}));
    const State k3 = rhs(t + c3 * h, combine({{a31, &k1}, {a32, &k2}}));
    const State k4 = rhs(t + c4 * h, combine({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State k5 = rhs(t + c5 * h, combine({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State k6 = rhs(t + h, combine({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    y_new = combine({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    k7 = rhs(t + h, y_new);
    for (std::size_t i = 0; i < 4; ++i)
      err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
  }

  const HamiltonianFn& h_;
  const IntegratorOptions& opt_;
  State k1_{};
  bool have_k1_ = false;
  double step_ = 0.0;
  long long steps_ = 0;
};

}  // namespace

Hermitian2 hamiltonian(double tau, const SystemParams& params) {
  const double half_gap = 0.5 * params.delta_ratio;
  const double drive = params.coupling_ratio * params.envelope(tau) * std::cos(tau);
  return {-half_gap, half_gap, complex(-drive, 0.0)};
}

std::vector<DensityMatrix> propagate(const HamiltonianFn& h, const DensityMatrix& rho0, std::span<const double> grid,
                                     const IntegratorOptions& options) {
  if (rho0.basis != Basis::Energy) throw std::invalid_argument("propagate: initial state must be in the energy basis");
  if (grid.empty()) return {};
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("propagate: grid must be strictly ascending");

  std::vector<DensityMatrix> out;
  out.reserve(grid.size());
  State y = pack(rho0);
  double t = grid.front();
  out.push_back(rho0);

  DormandPrince stepper(h, options);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    stepper.advance(y, t, grid[i]);
    out.push_back(unpack(y));
  }
  return out;
}

Trajectory evolve_exact(const SystemParams& params, const InitialState& init, std::span<const double> tau_grid,
                        const IntegratorOptions& options) {
  params.validate();
  init.validate();
  if (tau_grid.empty() || tau_grid.front() != 0.0) throw std::invalid_argument("evolve_exact: grid must start at 0");
  HamiltonianFn h = [&params](double tau) { return hamiltonian(tau, params); };
  Trajectory traj;
  traj.params = params;
  traj.tau_grid.assign(tau_grid.begin(), tau_grid.end());
  traj.states = propagate(h, init.density(), tau_grid, options);
  return traj;
}

std::vector<double> dipole_series(const Trajectory& traj) {
  std::vector<double> out;
  out.reserve(traj.states.size());
  for (const auto& s : traj.states) out.push_back(2.0 * traj.params.dipole * (rho_rr(s) - 0.5));
  return out;
}

std::vector<double> uniform_grid(double tau_max, int samples_per_period) {
  if (samples_per_period < 1) throw std::invalid_argument("uniform_grid: samples_per_period must be >= 1");
  if (!std::isfinite(tau_max) || tau_max <= 0.0) throw std::invalid_argument("uniform_grid: tau_max must be > 0");
  const double dtau = 2.0 * std::numbers::pi / samples_per_period;
  const auto n = static_cast<std::size_t>(std::llround(tau_max / dtau));
  std::vector<double> grid(n + 1);
  for (std::size_t i = 0; i <= n; ++i) grid[i] = static_cast<double>(i) * dtau;
  return grid;
}

}  // namespace dtls
