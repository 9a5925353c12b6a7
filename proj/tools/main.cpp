// dtls - driven two-level system experiments.
//
//   dtls evolve --config run.cfg --out traj.csv
//   dtls compare --config run.cfg --out cmp.csv      (summary in cmp.csv.summary.json)
//   dtls spectrum --config harmonics.cfg --format json
//   dtls scan-trapping --config scan.cfg
//   dtls figures fig1 --out fig1.csv
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "dtls/cli.hpp"
#include "dtls/evolver.hpp"

namespace {

constexpr int kConfigExit = 2;
constexpr int kNumericExit = 3;

struct Output {
  std::string path;
  std::string format = "csv";
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

void emit(const Output& o, const dtls::cli::Table& table) {
  if (o.format == "json")
    write_text(o.path, dtls::cli::to_json(table).dump(2) + "\n");
  else
    write_text(o.path, dtls::cli::to_csv(table));
}

std::string sidecar(const Output& o, const std::string& suffix) {
  return o.path.empty() || o.path == "-" ? std::string() : o.path + suffix;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laser-driven two-level system: exact and perturbative dynamics, emission spectra"};
  app.require_subcommand(1);

  std::string config_path;
  Output out;
  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", config_path, "Configuration file");
    if (needs_config) opt->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out.path, "Output path (default: stdout)");
    sub->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* evolve = app.add_subcommand("evolve", "Exact trajectory");
  add_common(evolve, true);

  auto* compare = app.add_subcommand("compare", "Exact vs zeroth- and first-order populations");
  add_common(compare, true);
  std::string summary_path;
  compare->add_option("--summary", summary_path, "Summary JSON path (default: <out>.summary.json, else stderr)");

  auto* spectrum = app.add_subcommand("spectrum", "Analytic lines vs numeric emission spectrum");
  add_common(spectrum, true);
  std::string dense_path;
  spectrum->add_option("--dense-out", dense_path, "Dense-grid CSV path (default: <out>.dense.csv)");

  auto* scan = app.add_subcommand("scan-trapping", "Trapping metric over a coupling sweep");
  add_common(scan, true);
  unsigned threads = 0;
  scan->add_option("--threads", threads, "Worker threads (0: hardware concurrency)");

  auto* figures = app.add_subcommand("figures", "Curves of the population figures");
  add_common(figures, false);
  std::string figure_id;
  figures->add_option("which", figure_id, "fig1 or fig2")->required();
  dtls::RunSettings figure_run{400.0, 64};
  figures->add_option("--tau-max", figure_run.tau_max, "Last tau")->check(CLI::PositiveNumber);
  figures->add_option("--samples-per-period", figure_run.samples_per_period, "Samples per drive period")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigExit;
  }

  try {
    std::optional<dtls::Config> config;
    if (!config_path.empty()) config = dtls::load_config(config_path);

    if (*evolve) {
      emit(out, dtls::cli::run_evolve(*config));
    } else if (*compare) {
      const auto result = dtls::cli::run_compare(*config);
      if (out.format == "json") {
        write_text(out.path,
                   nlohmann::json{{"table", dtls::cli::to_json(result.table)}, {"summary", result.summary}}.dump(2) +
                       "\n");
      } else {
        emit(out, result.table);
        const std::string path = summary_path.empty() ? sidecar(out, ".summary.json") : summary_path;
        if (path.empty())
          std::cerr << result.summary.dump(2) << "\n";
        else
          write_text(path, result.summary.dump(2) + "\n");
      }
    } else if (*spectrum) {
      const auto result = dtls::cli::run_spectrum(*config);
      if (out.format == "json") {
        nlohmann::json j{{"tau0", result.tau0},
                         {"window", result.window},
                         {"n_max", result.n_max},
                         {"peaks", dtls::cli::to_json(result.peaks)}};
        if (result.dense) j["dense"] = dtls::cli::to_json(*result.dense);
        write_text(out.path, j.dump(2) + "\n");
      } else {
        emit(out, result.peaks);
        if (result.dense) {
          const std::string path = dense_path.empty() ? sidecar(out, ".dense.csv") : dense_path;
          if (path.empty())
            std::cerr << "dense grid not written: give --out or --dense-out\n";
          else
            write_text(path, dtls::cli::to_csv(*result.dense));
        }
      }
    } else if (*scan) {
      emit(out, dtls::cli::run_scan_trapping(*config, threads));
    } else if (*figures) {
      emit(out, dtls::cli::run_figures(figure_id, figure_run));
    }
  } catch (const dtls::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kConfigExit;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigExit;
  } catch (const dtls::IntegrationError& e) {
    std::cerr << "numerical failure at tau = " << e.tau() << ": " << e.what() << "\n";
    return kNumericExit;
  } catch (const std::domain_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
