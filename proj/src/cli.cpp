// cli.cpp

#include "dtls/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dtls/evolver.hpp"
#include "dtls/perturbation.hpp"
#include "dtls/specfun.hpp"
#include "dtls/spectrum.hpp"

namespace dtls::cli {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDenseStep = 0.01;

std::string render(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  return std::get<std::string>(cell);
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  return out;
}

nlohmann::json validity_json(const ValidityReport& v) {
  nlohmann::json j;
  j["regime"] = to_string(v.regime);
  j["epsilon"] = v.epsilon;
  j["epsilon_offres"] = v.epsilon_offres;
  j["epsilon_strong"] = std::isfinite(v.epsilon_strong) ? nlohmann::json(v.epsilon_strong) : nlohmann::json(nullptr);
  j["f_min"] = v.f_min;
  j["ramp_excluded"] = v.ramp_excluded;
  return j;
}

}  // namespace

std::size_t Table::column(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("no column named '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> Table::numbers(std::string_view name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    const Cell& cell = row[c];
    if (const auto* d = std::get_if<double>(&cell))
      out.push_back(*d);
    else if (const auto* i = std::get_if<long long>(&cell))
      out.push_back(static_cast<double>(*i));
    else
      throw std::invalid_argument("column '" + std::string(name) + "' is not numeric");
  }
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string to_csv(const Table& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << render(row[i]);
    out << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const Table& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& cell : row) std::visit([&](const auto& v) { r.push_back(v); }, cell);
    rows.push_back(std::move(r));
  }
  return {{"columns", table.columns}, {"rows", std::move(rows)}};
}

Table run_evolve(const Config& config) {
  const auto grid = uniform_grid(config.run.tau_max, config.run.samples_per_period);
  const Trajectory traj = evolve_exact(config.system, config.initial, grid);
  const auto dipole = dipole_series(traj);

  Table t{{"tau", "rho11", "re_rho12", "im_rho12", "rho_rr", "dipole"}, {}};
  t.rows.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const DensityMatrix& s = traj.states[i];
    t.rows.push_back({traj.tau_grid[i], s.rho11, s.rho12.real(), s.rho12.imag(), rho_rr(s), dipole[i]});
  }
  return t;
}

CompareResult run_compare(const Config& config) {
  const auto grid = uniform_grid(config.run.tau_max, config.run.samples_per_period);
  const Trajectory traj = evolve_exact(config.system, config.initial, grid);

  CompareResult result;
  result.table.columns = {"tau", "rho_rr_exact", "rho_rr_order0", "rho_rr_order1", "err0", "err1"};
  double max0 = 0.0, max1 = 0.0, sum0 = 0.0, sum1 = 0.0;
  bool positivity_flag = false;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double tau = traj.tau_grid[i];
    const double exact = rho_rr(traj.states[i]);
    const double r0 = perturbation::rho_rr_zeroth_order(tau, config.system, config.initial);
    const double r1 = perturbation::rho_rr_first_order(tau, config.system, config.initial);
    const double e0 = std::abs(r0 - exact);
    const double e1 = std::abs(r1 - exact);
    max0 = std::max(max0, e0);
    max1 = std::max(max1, e1);
    sum0 += e0;
    sum1 += e1;
    positivity_flag = positivity_flag || perturbation::first_order(tau, config.system, config.initial).positivity_flag;
    result.table.rows.push_back({tau, exact, r0, r1, e0, e1});
  }
  const double n = static_cast<double>(traj.size());
  result.summary = {
      {"samples", traj.size()},
      {"max_err0", max0},
      {"mean_err0", sum0 / n},
      {"max_err1", max1},
      {"mean_err1", sum1 / n},
      {"positivity_flag", positivity_flag},
      {"validity", validity_json(validity_report(config.system, config.run.tau_max))},
  };
  return result;
}

SpectrumResult run_spectrum(const Config& config) {
  const SystemParams& params = config.system;
  if (!params.envelope.is_constant())
    throw std::invalid_argument("spectrum: the analytic line catalog needs envelope = constant");

  SpectrumResult result;
  const double zeta = params.zeta(0.0);
  result.n_max = config.spectrum.n_max.value_or(zeta >= 1.0 ? spectrum::cutoff_index(zeta) : 1);
  const double tau0_periods =
      config.spectrum.tau0_periods.value_or(std::ceil(spectrum::default_tau0(params.envelope) / kTwoPi));
  result.tau0 = tau0_periods * kTwoPi;
  result.window = config.spectrum.window_periods * kTwoPi;

  const int spp = std::max(config.run.samples_per_period, spectrum::kMinSamplesPerPeriod);
  const auto grid = uniform_grid(result.tau0 + result.window, spp);
  const Trajectory traj = evolve_exact(params, config.initial, grid);

  const auto peaks = spectrum::analytic_peaks(params, config.initial, result.n_max);
  std::vector<double> omegas;
  omegas.reserve(peaks.size());
  for (const auto& p : peaks) omegas.push_back(p.omega);
  const auto numeric = spectrum::emission_spectrum(traj, omegas, result.tau0, result.window);

  result.peaks.columns = {"class", "n", "omega", "intensity_analytic", "intensity_numeric", "rel_diff"};
  for (std::size_t i = 0; i < peaks.size(); ++i) {
    const auto& p = peaks[i];
    const double rel = std::abs(numeric[i].intensity - p.intensity) / p.intensity;
    result.peaks.rows.push_back(
        {spectrum::to_string(p.peak_class), static_cast<long long>(p.n), p.omega, p.intensity, numeric[i].intensity, rel});
  }

  if (config.spectrum.dense_grid) {
    const double top = 2.0 * result.n_max + 2.0;
    const auto count = static_cast<long long>(std::llround(top / kDenseStep));
    std::vector<double> dense(static_cast<std::size_t>(count + 1));
    for (long long k = 0; k <= count; ++k) dense[static_cast<std::size_t>(k)] = static_cast<double>(k) * kDenseStep;
    Table t{{"omega", "intensity"}, {}};
    for (const auto& pt : spectrum::emission_spectrum(traj, dense, result.tau0, result.window))
      t.rows.push_back({pt.omega, pt.intensity});
    result.dense = std::move(t);
  }
  return result;
}

Table run_scan_trapping(const Config& config, unsigned threads) {
  const ScanSettings& scan = config.scan;
  const auto couplings = linspace(scan.coupling_min, scan.coupling_max, scan.coupling_steps);
  const auto grid = uniform_grid(scan.tau_scan, config.run.samples_per_period);
  const InitialState init = InitialState::right();
  const double start = rho_rr(init.density());

  std::vector<double> metric(couplings.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < couplings.size(); i = next++) {
      try {
        SystemParams p = config.system;
        p.coupling_ratio = couplings[i];
        const Trajectory traj = evolve_exact(p, init, grid);
        double m = 0.0;
        for (const auto& s : traj.states) m = std::max(m, std::abs(rho_rr(s) - start));
        metric[i] = m;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(couplings.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  Table t{{"coupling", "lambda0", "metric"}, {}};
  for (std::size_t i = 0; i < couplings.size(); ++i)
    t.rows.push_back({couplings[i], specfun::bessel_j(0, 2.0 * couplings[i]), metric[i]});
  return t;
}

Table run_figures(std::string_view which, const RunSettings& run) {
  const double trap = perturbation::trapping_couplings(1).front();
  const InitialState tilted{0.75, std::sqrt(3.0) / 4.0, std::numbers::pi / 4.0};
  const auto grid = uniform_grid(run.tau_max, run.samples_per_period);

  Table t{{"tau", "curve_a", "curve_b", "curve_c"}, {}};
  t.rows.reserve(grid.size());
  if (which == "fig1") {
    SystemParams p;
    p.delta_ratio = 0.2;
    p.envelope = Envelope{ExpTurnOn{10.0}};
    SystemParams a = p, b = p, c = p;
    a.coupling_ratio = 0.0;
    b.coupling_ratio = 1.8;
    c.coupling_ratio = trap;
    for (double tau : grid)
      t.rows.push_back({tau, perturbation::rho_rr_zeroth_order(tau, a, tilted),
                        perturbation::rho_rr_zeroth_order(tau, b, tilted),
                        perturbation::rho_rr_zeroth_order(tau, c, tilted)});
  } else if (which == "fig2") {
    SystemParams a;
    a.delta_ratio = 0.2;
    a.coupling_ratio = 1.8;
    SystemParams b = a;
    b.coupling_ratio = trap;
    for (double tau : grid)
      t.rows.push_back({tau, perturbation::rho_rr_first_order(tau, a, tilted),
                        perturbation::rho_rr_first_order(tau, b, tilted),
                        perturbation::rho_rr_first_order(tau, b, InitialState::right())});
  } else {
    throw std::invalid_argument("unknown figure '" + std::string(which) + "' (expected fig1 or fig2)");
  }
  return t;
}

}  // namespace dtls::cli
