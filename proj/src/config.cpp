// config.cpp

#include "dtls/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace dtls {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<int> parse_int(std::string_view s) {
  s = trim(s);
  int v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || end != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

bool looks_absolute(std::string_view key) {
  static const std::set<std::string_view> names = {
      "omega_l", "omega_laser", "laser_frequency", "frequency", "delta0", "delta_0", "omega0", "omega_0",
      "rabi_frequency", "wavelength", "time", "t_max", "duration", "field_amplitude", "e0"};
  static const std::array<std::string_view, 8> suffixes = {"_hz", "_thz", "_ev", "_fs", "_ps", "_nm", "_s", "_au"};
  if (names.contains(key)) return true;
  return std::any_of(suffixes.begin(), suffixes.end(), [&](std::string_view suf) { return key.ends_with(suf); });
}

using Setter = std::function<void(Config&, std::string_view)>;

[[noreturn]] void bad_value(const std::string& key, std::string_view value, const char* expected) {
  throw ConfigError(key, "config error: key '" + key + "' has invalid value '" + std::string(value) + "' (expected " +
                             expected + ")");
}

template <class Section, class Field>
Setter real_field(const std::string& key, Section Config::*section, Field Section::*field) {
  return [key, section, field](Config& c, std::string_view v) {
    auto parsed = parse_real(v);
    if (!parsed) bad_value(key, v, "a real number");
    (c.*section).*field = *parsed;
  };
}

template <class Section, class Field>
Setter int_field(const std::string& key, Section Config::*section, Field Section::*field) {
  return [key, section, field](Config& c, std::string_view v) {
    auto parsed = parse_int(v);
    if (!parsed) bad_value(key, v, "an integer");
    (c.*section).*field = *parsed;
  };
}

const std::map<std::string, std::map<std::string, Setter>>& schema() {
  static const auto table = [] {
    std::map<std::string, std::map<std::string, Setter>> t;
    t["system"]["delta_ratio"] = real_field("delta_ratio", &Config::system, &SystemParams::delta_ratio);
    t["system"]["coupling_ratio"] = real_field("coupling_ratio", &Config::system, &SystemParams::coupling_ratio);
    t["system"]["dipole"] = real_field("dipole", &Config::system, &SystemParams::dipole);
    t["system"]["envelope"] = [](Config& c, std::string_view v) {
      try {
        c.system.envelope = Envelope::parse(std::string(v));
      } catch (const std::invalid_argument& e) {
        throw ConfigError("envelope", std::string("config error: key 'envelope': ") + e.what());
      }
    };
    t["initial"]["rho11"] = real_field("rho11", &Config::initial, &InitialState::rho11);
    t["initial"]["coherence_mag"] = real_field("coherence_mag", &Config::initial, &InitialState::coherence_mag);
    t["initial"]["coherence_phase"] =
        real_field("coherence_phase", &Config::initial, &InitialState::coherence_phase);
    t["run"]["tau_max"] = real_field("tau_max", &Config::run, &RunSettings::tau_max);
    t["run"]["samples_per_period"] = int_field("samples_per_period", &Config::run, &RunSettings::samples_per_period);
    t["spectrum"]["tau0_periods"] = [](Config& c, std::string_view v) {
      auto parsed = parse_real(v);
      if (!parsed) bad_value("tau0_periods", v, "a real number");
      c.spectrum.tau0_periods = *parsed;
    };
    t["spectrum"]["window_periods"] = real_field("window_periods", &Config::spectrum, &SpectrumSettings::window_periods);
    t["spectrum"]["n_max"] = [](Config& c, std::string_view v) {
      auto parsed = parse_int(v);
      if (!parsed) bad_value("n_max", v, "an integer");
      c.spectrum.n_max = *parsed;
    };
    t["spectrum"]["dense_grid"] = [](Config& c, std::string_view v) {
      if (v == "true")
        c.spectrum.dense_grid = true;
      else if (v == "false")
        c.spectrum.dense_grid = false;
      else
        bad_value("dense_grid", v, "true or false");
    };
    t["scan"]["coupling_min"] = real_field("coupling_min", &Config::scan, &ScanSettings::coupling_min);
    t["scan"]["coupling_max"] = real_field("coupling_max", &Config::scan, &ScanSettings::coupling_max);
    t["scan"]["coupling_steps"] = int_field("coupling_steps", &Config::scan, &ScanSettings::coupling_steps);
    t["scan"]["tau_scan"] = real_field("tau_scan", &Config::scan, &ScanSettings::tau_scan);
    return t;
  }();
  return table;
}

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key, "config error: key '" + key + "' " + what);
}

void validate(const Config& c) {
  const auto& s = c.system;
  require(std::isfinite(s.delta_ratio) && s.delta_ratio >= 0.0, "delta_ratio", "must be >= 0");
  require(std::isfinite(s.coupling_ratio) && s.coupling_ratio >= 0.0, "coupling_ratio", "must be >= 0");
  require(std::isfinite(s.dipole) && s.dipole > 0.0, "dipole", "must be > 0");

  const auto& i = c.initial;
  require(std::isfinite(i.rho11) && i.rho11 >= 0.0 && i.rho11 <= 1.0, "rho11", "must lie in [0, 1]");
  require(std::isfinite(i.coherence_mag) && i.coherence_mag >= 0.0, "coherence_mag", "must be >= 0");
  require(i.coherence_mag * i.coherence_mag <= i.rho11 * (1.0 - i.rho11) + 1e-12, "coherence_mag",
          "violates coherence_mag^2 <= rho11 (1 - rho11)");
  require(std::isfinite(i.coherence_phase), "coherence_phase", "must be finite");

  require(std::isfinite(c.run.tau_max) && c.run.tau_max > 0.0, "tau_max", "must be > 0");
  require(c.run.samples_per_period >= 1, "samples_per_period", "must be >= 1");

  const auto& sp = c.spectrum;
  if (sp.tau0_periods)
    require(std::isfinite(*sp.tau0_periods) && *sp.tau0_periods >= 0.0 &&
                *sp.tau0_periods == std::round(*sp.tau0_periods),
            "tau0_periods", "must be a non-negative whole number");
  require(sp.window_periods >= 1.0 && sp.window_periods == std::round(sp.window_periods), "window_periods",
          "must be a whole number >= 1");
  if (sp.n_max) require(*sp.n_max >= 1, "n_max", "must be >= 1");

  const auto& sc = c.scan;
  require(std::isfinite(sc.coupling_min) && sc.coupling_min >= 0.0, "coupling_min", "must be >= 0");
  require(std::isfinite(sc.coupling_max) && sc.coupling_max > sc.coupling_min, "coupling_max",
          "must exceed coupling_min");
  require(sc.coupling_steps >= 2, "coupling_steps", "must be >= 2");
  require(std::isfinite(sc.tau_scan) && sc.tau_scan > 0.0, "tau_scan", "must be > 0");
}

}  // namespace

std::optional<double> parse_real(std::string_view text) {
  std::string_view s = trim(text);
  const auto pi_at = s.find("pi");
  if (pi_at == std::string_view::npos) return parse_number(s);

  double factor = 1.0;
  std::string_view head = trim(s.substr(0, pi_at));
  if (!head.empty()) {
    if (head == "-") {
      factor = -1.0;
    } else {
      if (head.back() != '*') return std::nullopt;
      auto f = parse_number(head.substr(0, head.size() - 1));
      if (!f) return std::nullopt;
      factor = *f;
    }
  }
  std::string_view tail = trim(s.substr(pi_at + 2));
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/') return std::nullopt;
    auto d = parse_number(tail.substr(1));
    if (!d || *d == 0.0) return std::nullopt;
    divisor = *d;
  }
  return factor * std::numbers::pi / divisor;
}

Config parse_config(std::string_view text) {
  Config config;
  std::string section;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("", "config error: malformed section header on line " + std::to_string(line_no));
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!schema().contains(section))
        throw ConfigError(section, "config error: unknown section '[" + section + "]'");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("", "config error: expected 'key = value' on line " + std::to_string(line_no));
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (section.empty()) throw ConfigError(key, "config error: key '" + key + "' appears before any [section]");

    if (looks_absolute(key))
      throw ConfigError(key, "config error: key '" + key +
                                 "' looks like an absolute-unit quantity; use dimensionless ratios and tau");
    const auto& keys = schema().at(section);
    const auto it = keys.find(key);
    if (it == keys.end()) throw ConfigError(key, "config error: unknown key '" + key + "' in [" + section + "]");
    if (!seen.insert(section + "." + key).second)
      throw ConfigError(key, "config error: key '" + key + "' given twice in [" + section + "]");
    it->second(config, value);
  }
  if (!seen.contains("system.delta_ratio"))
    throw ConfigError("delta_ratio", "config error: required key 'delta_ratio' missing from [system]");
  validate(config);
  return config;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "config error: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_text(const Config& c) {
  std::ostringstream out;
  out << "[system]\n"
      << "delta_ratio = " << shortest(c.system.delta_ratio) << "\n"
      << "coupling_ratio = " << shortest(c.system.coupling_ratio) << "\n"
      << "dipole = " << shortest(c.system.dipole) << "\n"
      << "envelope = " << c.system.envelope.to_string() << "\n\n"
      << "[initial]\n"
      << "rho11 = " << shortest(c.initial.rho11) << "\n"
      << "coherence_mag = " << shortest(c.initial.coherence_mag) << "\n"
      << "coherence_phase = " << shortest(c.initial.coherence_phase) << "\n\n"
      << "[run]\n"
      << "tau_max = " << shortest(c.run.tau_max) << "\n"
      << "samples_per_period = " << c.run.samples_per_period << "\n\n"
      << "[spectrum]\n";
  if (c.spectrum.tau0_periods) out << "tau0_periods = " << shortest(*c.spectrum.tau0_periods) << "\n";
  out << "window_periods = " << shortest(c.spectrum.window_periods) << "\n";
  if (c.spectrum.n_max) out << "n_max = " << *c.spectrum.n_max << "\n";
  out << "dense_grid = " << (c.spectrum.dense_grid ? "true" : "false") << "\n\n"
      << "[scan]\n"
      << "coupling_min = " << shortest(c.scan.coupling_min) << "\n"
      << "coupling_max = " << shortest(c.scan.coupling_max) << "\n"
      << "coupling_steps = " << c.scan.coupling_steps << "\n"
      << "tau_scan = " << shortest(c.scan.tau_scan) << "\n";
  return out.str();
}

}  // namespace dtls
