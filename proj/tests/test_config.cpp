#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>

#include "dtls/config.hpp"

using namespace dtls;

namespace {

std::string error_key(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<none>";
}

std::string error_message(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse_real") {
  CHECK(parse_real("0.25") == 0.25);
  CHECK(parse_real(" -3e-2 ") == -0.03);
  CHECK(parse_real("pi") == std::numbers::pi);
  CHECK(parse_real("pi/4") == std::numbers::pi / 4);
  CHECK(parse_real("0.5*pi") == 0.5 * std::numbers::pi);
  CHECK(parse_real("3*pi/2") == 3 * std::numbers::pi / 2);
  CHECK(parse_real("-pi") == -std::numbers::pi);
  CHECK(parse_real("200 * pi") == 200 * std::numbers::pi);
  CHECK_FALSE(parse_real("").has_value());
  CHECK_FALSE(parse_real("abc").has_value());
  CHECK_FALSE(parse_real("1.0x").has_value());
  CHECK_FALSE(parse_real("pi/0").has_value());
  CHECK_FALSE(parse_real("2pi").has_value());
}

TEST_CASE("full configuration") {
  const auto c = parse_config(R"(
# harmonic generation run
[system]
delta_ratio = 0.1
coupling_ratio = 10     # zeta = 20
dipole = 2
envelope = exp_turn_on:10

[initial]
rho11 = 0.75
coherence_mag = 0.4330127018922193
coherence_phase = pi/4

[run]
tau_max = 40*pi
samples_per_period = 128

[spectrum]
tau0_periods = 8
window_periods = 100
n_max = 12
dense_grid = true

[scan]
coupling_min = 0.5
coupling_max = 2
coupling_steps = 31
tau_scan = 150
)");
  CHECK(c.system.delta_ratio == 0.1);
  CHECK(c.system.coupling_ratio == 10.0);
  CHECK(c.system.dipole == 2.0);
  CHECK(c.system.envelope == Envelope{ExpTurnOn{10.0}});
  CHECK(c.initial.coherence_phase == std::numbers::pi / 4);
  CHECK(c.run.tau_max == 40 * std::numbers::pi);
  CHECK(c.run.samples_per_period == 128);
  CHECK(c.spectrum.tau0_periods == 8.0);
  CHECK(c.spectrum.n_max == 12);
  CHECK(c.spectrum.dense_grid);
  CHECK(c.scan.coupling_steps == 31);
  CHECK(c.scan.tau_scan == 150.0);
}

TEST_CASE("defaults") {
  const auto c = parse_config("[system]\ndelta_ratio = 0.2\n");
  CHECK(c.system.coupling_ratio == 0.0);
  CHECK(c.system.dipole == 1.0);
  CHECK(c.system.envelope.is_constant());
  CHECK(c.initial == InitialState::ground());
  CHECK(c.run == RunSettings{});
  CHECK_FALSE(c.spectrum.tau0_periods.has_value());
  CHECK_FALSE(c.spectrum.n_max.has_value());
}

TEST_CASE("errors name the offending key") {
  CHECK(error_key("[system]\ndelta_ratio = 0.2\ncopling_ratio = 1\n") == "copling_ratio");
  CHECK(error_message("[system]\ndelta_ratio = 0.2\ncopling_ratio = 1\n").find("copling_ratio") != std::string::npos);
  CHECK(error_key("[system]\ncoupling_ratio = 1\n") == "delta_ratio");
  CHECK(error_key("[system]\ndelta_ratio = fast\n") == "delta_ratio");
  CHECK(error_key("[system]\ndelta_ratio = 0.2\ndelta_ratio = 0.3\n") == "delta_ratio");
  CHECK(error_key("[system]\ndelta_ratio = -0.2\n") == "delta_ratio");
  CHECK(error_key("[system]\ndelta_ratio = 0.2\nenvelope = gauss:4\n") == "envelope");
  CHECK(error_key("[system]\ndelta_ratio = 0.2\n[initial]\nrho11 = 0.9\ncoherence_mag = 0.4\n") == "coherence_mag");
  CHECK(error_key("[system]\ndelta_ratio = 0.2\n[run]\nsamples_per_period = 6.5\n") == "samples_per_period");
  CHECK(error_key("[system]\ndelta_ratio = 0.2\n[spectrum]\ndense_grid = yes\n") == "dense_grid");
  CHECK(error_key("[system]\ndelta_ratio = 0.2\n[spectrum]\nwindow_periods = 10.5\n") == "window_periods");
  CHECK(error_key("[system]\ndelta_ratio = 0.2\n[scan]\ncoupling_min = 2\ncoupling_max = 1\n") == "coupling_max");
  CHECK(error_key("[sytem]\ndelta_ratio = 0.2\n") == "sytem");
  CHECK(error_key("delta_ratio = 0.2\n") == "delta_ratio");
  CHECK_THROWS_AS(parse_config("[system\ndelta_ratio = 0.2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[system]\ndelta_ratio 0.2\n"), ConfigError);
}

TEST_CASE("absolute-unit keys are rejected") {
  for (const char* key : {"omega_l", "frequency_hz", "delta0", "duration_fs", "wavelength"}) {
    const std::string text = std::string("[system]\ndelta_ratio = 0.2\n") + key + " = 1\n";
    CHECK(error_key(text) == key);
    CHECK(error_message(text).find("absolute") != std::string::npos);
  }
}

TEST_CASE("property: to_text round trips") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    Config c;
    c.system.delta_ratio = u(rng);
    c.system.coupling_ratio = 20 * u(rng);
    c.system.dipole = 0.1 + u(rng);
    const int kind = i % 3;
    if (kind == 1) c.system.envelope = Envelope{ExpTurnOn{1 + 30 * u(rng)}};
    if (kind == 2) c.system.envelope = Envelope{SinSqRamp{1 + 30 * u(rng)}};
    const double p = u(rng);
    c.initial = {p, std::sqrt(p * (1 - p)) * u(rng), 6 * u(rng) - 3};
    c.run.tau_max = 1 + 500 * u(rng);
    c.run.samples_per_period = 1 + static_cast<int>(300 * u(rng));
    if (i % 2) c.spectrum.tau0_periods = std::round(10 * u(rng));
    if (i % 4 == 0) c.spectrum.n_max = 1 + i;
    c.spectrum.dense_grid = i % 5 == 0;
    c.scan.coupling_min = u(rng);
    c.scan.coupling_max = 1 + 3 * u(rng);
    c.scan.coupling_steps = 2 + i;
    c.scan.tau_scan = 10 + 100 * u(rng);
    CHECK(parse_config(to_text(c)) == c);
  }
}

TEST_CASE("load_config") {
  const std::string path = "test_config_tmp.cfg";
  {
    std::ofstream out(path);
    out << "[system]\ndelta_ratio = 0.2\ncoupling_ratio = 1.8\n";
  }
  CHECK(load_config(path).system.coupling_ratio == 1.8);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_config("no/such/file.cfg"), ConfigError);
}
