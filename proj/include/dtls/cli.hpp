// cli.hpp - Experiment drivers behind the command-line tool.
//
// Each run_* function takes a validated Config and returns plain tables;
// writing them out (CSV or JSON) is left to the caller.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dtls/config.hpp"

namespace dtls::cli {

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Index of a named column; throws std::out_of_range if absent.
  std::size_t column(std::string_view name) const;
  /// Numeric column as doubles.
  std::vector<double> numbers(std::string_view name) const;
};

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

/// Header row plus one comma-separated line per row.
std::string to_csv(const Table& table);
/// {"columns": [...], "rows": [[...], ...]}
nlohmann::json to_json(const Table& table);

/// tau, rho11, re_rho12, im_rho12, rho_rr, dipole.
Table run_evolve(const Config& config);

struct CompareResult {
  Table table;  // tau, rho_rr_exact, rho_rr_order0, rho_rr_order1, err0, err1
  nlohmann::json summary;
};

CompareResult run_compare(const Config& config);

struct SpectrumResult {
  Table peaks;                // class, n, omega, intensity_analytic, intensity_numeric, rel_diff
  std::optional<Table> dense; // omega, intensity
  double tau0 = 0.0;
  double window = 0.0;
  int n_max = 0;
};

/// Exact trajectory over [0, tau0 + window] at config.run.samples_per_period
/// (raised to the Fourier minimum if lower), numeric |d(omega)|^2 at every
/// analytic line. Needs a constant envelope.
SpectrumResult run_spectrum(const Config& config);

/// coupling, lambda0, metric; init |r>, rows in grid order.
Table run_scan_trapping(const Config& config, unsigned threads = 0);

/// tau, curve_a, curve_b, curve_c at the figure's preset parameters.
/// tau_max and samples_per_period come from `run`. Unknown id throws
/// std::invalid_argument.
Table run_figures(std::string_view which, const RunSettings& run = {400.0, 64});

}  // namespace dtls::cli
