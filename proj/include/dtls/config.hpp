// config.hpp - Plain-text run configuration.
//
//   # comment
//   [system]
//   delta_ratio = 0.2
//   coupling_ratio = 1.8
//   envelope = exp_turn_on:10
//
// Sections: system, initial, run, spectrum, scan. Values are plain numbers,
// or multiples of pi written as `pi`, `pi/4`, `0.5*pi`, `3*pi/2`.

#pragma once

#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "dtls/model.hpp"

namespace dtls {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct RunSettings {
  double tau_max = 40.0 * std::numbers::pi;
  int samples_per_period = 64;

  bool operator==(const RunSettings&) const = default;
};

struct SpectrumSettings {
  std::optional<double> tau0_periods;  // default: spectrum::default_tau0
  double window_periods = 100.0;
  std::optional<int> n_max;  // default: plateau cutoff index
  bool dense_grid = false;

  bool operator==(const SpectrumSettings&) const = default;
};

struct ScanSettings {
  double coupling_min = 0.0;
  double coupling_max = 3.0;
  int coupling_steps = 61;
  double tau_scan = 200.0;

  bool operator==(const ScanSettings&) const = default;
};

struct Config {
  SystemParams system;
  InitialState initial;
  RunSettings run;
  SpectrumSettings spectrum;
  ScanSettings scan;

  bool operator==(const Config&) const = default;
};

/// Parses and validates. Throws ConfigError naming the offending key.
Config parse_config(std::string_view text);
Config load_config(const std::string& path);

/// Writes every field back in the same format; parse_config(to_text(c)) == c.
std::string to_text(const Config& config);

/// Number or pi multiple, as accepted in config values.
std::optional<double> parse_real(std::string_view text);

}  // namespace dtls
