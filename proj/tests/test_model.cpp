#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "dtls/model.hpp"

using namespace dtls;

namespace {

DensityMatrix random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double p = u(rng);
  const double r = std::sqrt(p * (1.0 - p)) * u(rng);
  return {p, 1.0 - p, std::polar(r, 2.0 * std::numbers::pi * u(rng)), Basis::Energy};
}

}  // namespace

TEST_CASE("envelopes") {
  const Envelope c;
  CHECK(c.is_constant());
  CHECK(c(0.0) == 1.0);
  CHECK(c(123.0) == 1.0);
  CHECK(c.max_slope() == 0.0);

  const Envelope e{ExpTurnOn{10.0}};
  for (double tau : {0.0, 0.5, 3.0, 10.0, 47.0, 400.0})
    CHECK(e(tau) == doctest::Approx(1.0 - std::exp(-tau / 10.0)).epsilon(1e-15));
  CHECK(e.max_slope() == doctest::Approx(0.1));

  const Envelope s{SinSqRamp{20.0}};
  CHECK(s(0.0) == 0.0);
  CHECK(s(10.0) == doctest::Approx(0.5));
  CHECK(s(20.0) == 1.0);
  CHECK(s(50.0) == 1.0);

  SUBCASE("bounded and slowly varying") {
    for (const Envelope& env : {c, e, s, Envelope{SinSqRamp{3.0}}, Envelope{ExpTurnOn{0.7}}}) {
      const double h = 1e-6;
      for (double tau = 0.0; tau < 60.0; tau += 0.11) {
        CHECK(env(tau) >= 0.0);
        CHECK(env(tau) <= 1.0);
        CHECK(std::abs(env(tau + h) - env(tau)) / h <= env.max_slope() * (1.0 + 1e-6) + 1e-9);
      }
    }
  }

  SUBCASE("text round trip") {
    for (const Envelope& env : {c, e, s, Envelope{ExpTurnOn{0.125}}}) CHECK(Envelope::parse(env.to_string()) == env);
    CHECK(e.to_string() == "exp_turn_on:10");
    CHECK_THROWS_AS(Envelope::parse("gauss:3"), std::invalid_argument);
    CHECK_THROWS_AS(Envelope::parse("exp_turn_on:x"), std::invalid_argument);
    CHECK_THROWS_AS(Envelope::parse("exp_turn_on:-1"), std::invalid_argument);
  }
}

TEST_CASE("system parameters") {
  SystemParams p;
  CHECK_NOTHROW(p.validate());
  p.coupling_ratio = 1.5;
  CHECK(p.zeta(3.0) == doctest::Approx(3.0));
  p.coupling_ratio = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.coupling_ratio = 1.0;
  p.delta_ratio = std::nan("");
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.delta_ratio = -0.1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.delta_ratio = 0.0;
  CHECK_NOTHROW(p.validate());
  p.dipole = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("to_position_basis examples") {
  const DensityMatrix ground{1.0, 0.0, {}, Basis::Energy};
  CHECK(to_position_basis(ground).rho11 == doctest::Approx(0.5));

  const DensityMatrix r{0.5, 0.5, 0.5, Basis::Energy};
  const auto pos = to_position_basis(r);
  CHECK(pos.rho11 == doctest::Approx(1.0));
  CHECK(pos.rho22 == doctest::Approx(0.0));
  CHECK(std::abs(pos.rho12) == doctest::Approx(0.0));

  const InitialState tilted{0.75, std::sqrt(3.0) / 4.0, std::numbers::pi / 4.0};
  const double want = 0.5 + std::sqrt(3.0) / 4.0 * std::cos(std::numbers::pi / 4.0);
  CHECK(to_position_basis(tilted.density()).rho11 == doctest::Approx(want).epsilon(1e-15));
  CHECK(rho_rr(tilted.density()) == doctest::Approx(want).epsilon(1e-15));
  CHECK(want == doctest::Approx(0.806).epsilon(1e-3));

  CHECK_THROWS_AS(to_position_basis(pos), std::invalid_argument);
  CHECK_THROWS_AS(to_energy_basis(ground), std::invalid_argument);
}

TEST_CASE("rho_rr examples") {
  CHECK(rho_rr(InitialState::maximally_mixed().density()) == doctest::Approx(0.5));
  CHECK(rho_rr(InitialState::left().density()) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(rho_rr(InitialState::right().density()) == doctest::Approx(1.0));
  CHECK(rho_ll(InitialState::left().density()) == doctest::Approx(1.0));
}

TEST_CASE("property: basis change preserves trace, eigenvalues and purity") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 500; ++i) {
    const DensityMatrix rho = random_state(rng);
    const DensityMatrix pos = to_position_basis(rho);
    const DensityMatrix back = to_energy_basis(pos);
    CHECK(pos.trace() == doctest::Approx(rho.trace()).epsilon(1e-15));
    CHECK(std::abs(pos.purity() - rho.purity()) <= 1e-14);
    const auto ea = rho.eigenvalues(), eb = pos.eigenvalues();
    CHECK(std::abs(ea[0] - eb[0]) <= 1e-14);
    CHECK(std::abs(ea[1] - eb[1]) <= 1e-14);
    CHECK(std::abs(back.rho11 - rho.rho11) <= 1e-14);
    CHECK(std::abs(back.rho12 - rho.rho12) <= 1e-14);
    CHECK(pos.rho11 == doctest::Approx(0.5 * (1.0 + 2.0 * rho.rho12.real())).epsilon(1e-14));
    CHECK(rho_rr(rho) + rho_ll(rho) == 1.0);
    CHECK(rho_rr(pos) == doctest::Approx(rho_rr(rho)).epsilon(1e-14));
    CHECK(rho.is_physical());
    CHECK(pos.is_physical());
  }
}

TEST_CASE("hermitian eigenvalues") {
  const Hermitian2 m{1.0, -1.0, complex(0.0, 1.0)};
  const auto ev = m.eigenvalues();
  CHECK(ev[0] == doctest::Approx(-std::sqrt(2.0)));
  CHECK(ev[1] == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("initial state validation") {
  CHECK_NOTHROW(InitialState::ground().validate());
  CHECK_NOTHROW(InitialState::right().validate());
  CHECK_NOTHROW(InitialState::left().validate());
  CHECK_THROWS_AS((InitialState{0.9, 0.4, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((InitialState{1.2, 0.0, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((InitialState{0.5, -0.1, 0.0}.validate()), std::invalid_argument);
  CHECK(InitialState::left().rho12().real() == doctest::Approx(-0.5));
}

TEST_CASE("validity report") {
  SUBCASE("far off resonance") {
    SystemParams p{0.2, 1.202, 1.0, {}};
    const auto v = validity_report(p, 100.0);
    CHECK(v.regime == Regime::FarOffResonance);
    CHECK(v.epsilon == doctest::Approx(0.2));
    CHECK(to_string(v.regime) == "far-off-resonance");
  }
  SUBCASE("strong field") {
    SystemParams p{0.5, 50.0, 1.0, {}};
    const auto v = validity_report(p, 100.0);
    CHECK(v.regime == Regime::StrongField);
    CHECK(v.epsilon == doctest::Approx(0.5 / std::sqrt(50.0)).epsilon(1e-12));
    CHECK(v.epsilon == doctest::Approx(0.0707).epsilon(1e-3));
    CHECK(to_string(v.regime) == "strong-field");
  }
  SUBCASE("neither") {
    SystemParams p{2.0, 0.1, 1.0, {}};
    CHECK(validity_report(p, 100.0).regime == Regime::Neither);
  }
  SUBCASE("both") {
    SystemParams p{0.1, 10.0, 1.0, {}};
    const auto v = validity_report(p, 100.0);
    CHECK(v.regime == Regime::Both);
    CHECK(v.epsilon == doctest::Approx(0.1 / std::sqrt(10.0)));
  }
  SUBCASE("turn-on ramp is excluded from f_min and flagged") {
    SystemParams p{0.5, 50.0, 1.0, Envelope{ExpTurnOn{10.0}}};
    const auto v = validity_report(p, 200.0);
    CHECK(v.ramp_excluded);
    CHECK(v.f_min >= kRampFloor);
    CHECK(v.f_min < 0.11);
    CHECK(v.regime == Regime::StrongField);
    CHECK_FALSE(validity_report(SystemParams{0.5, 50.0, 1.0, {}}, 200.0).ramp_excluded);
  }
  SUBCASE("epsilon rule") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(0.01, 3.0), c(0.0, 100.0);
    for (int i = 0; i < 200; ++i) {
      SystemParams p{d(rng), c(rng), 1.0, {}};
      const auto v = validity_report(p, 50.0);
      const bool strong = v.regime == Regime::StrongField || v.regime == Regime::Both;
      CHECK(v.epsilon == (strong ? std::min(v.epsilon_offres, v.epsilon_strong) : v.epsilon_offres));
    }
  }
  CHECK_THROWS_AS(validity_report(SystemParams{}, 0.0), std::invalid_argument);
}

TEST_CASE("trajectory helpers") {
  Trajectory t;
  t.tau_grid = {0.0, 1.0};
  t.states = {InitialState::right().density(), InitialState::ground().density()};
  const auto rr = t.rho_rr_series();
  CHECK(t.size() == 2);
  CHECK(rr[0] == doctest::Approx(1.0));
  CHECK(rr[1] == doctest::Approx(0.5));
}
