// evolver.hpp - Exact propagation of the density matrix under the full
// dimensionless Hamiltonian
//
//   H(tau) = (delta/2)(s22 - s11) - c f(tau) cos(tau) (s12 + s21),
//
// delta = Delta_0/omega_L, c = Omega_0/omega_L. No rotating-wave or
// micromotion approximation is made; this is the reference every
// perturbative result is checked against.

#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "dtls/model.hpp"

namespace dtls {

/// Raised when the integrator cannot proceed (step underflow, step budget).
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double tau) : std::runtime_error(what), tau_(tau) {}
  double tau() const { return tau_; }

 private:
  double tau_;
};

struct IntegratorOptions {
  double rel_tol = 1e-11;
  double abs_tol = 1e-13;
  double initial_step = 1e-3;
  long long max_steps = 100'000'000;
};

/// Energy-basis Hamiltonian at tau.
Hermitian2 hamiltonian(double tau, const SystemParams& params);

using HamiltonianFn = std::function<Hermitian2(double)>;

/// Integrates d rho/d tau = -i [H(tau), rho] from grid.front() through every
/// grid point with an embedded Dormand-Prince 5(4) pair. Steps are clipped so
/// each grid point is hit exactly. rho0 must be in the energy basis and H
/// must return energy-basis matrices.
std::vector<DensityMatrix> propagate(const HamiltonianFn& h, const DensityMatrix& rho0, std::span<const double> grid,
                                     const IntegratorOptions& options = {});

/// Exact trajectory for a physical parameter set. The grid must start at 0
/// and be strictly ascending.
Trajectory evolve_exact(const SystemParams& params, const InitialState& init, std::span<const double> tau_grid,
                        const IntegratorOptions& options = {});

/// <d>(tau) = 2 mu (rho_rr - 1/2) at every sample.
std::vector<double> dipole_series(const Trajectory& traj);

/// 0, dtau, 2 dtau, ... up to tau_max with dtau = 2 pi / samples_per_period.
/// tau_max is rounded to the nearest sample.
std::vector<double> uniform_grid(double tau_max, int samples_per_period);

}  // namespace dtls
