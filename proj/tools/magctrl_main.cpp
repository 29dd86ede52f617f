// Command-line front end: controllability analysis of magnetically
// actuated nadir-pointing spacecraft.
//
//   magctrl check     --config cfg.json [--output report.json]
//   magctrl field     --config cfg.json [--samples N] [--orbits K]
//   magctrl kmatrices --config cfg.json (--time T | --sweep N)
//   magctrl gramian   --config cfg.json [--orbits K]
//   magctrl steer     --config cfg.json --x0 q1 q2 q3 w1 w2 w3
//
// Exit code 0 means the analysis completed (whatever the verdict says);
// 1 means an input or numerical error.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "magctrl/analysis.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string output_path;  // empty = stdout
  double rank_tol = -1.0;
  int steps_per_orbit = -1;
  int gramian_nodes = -1;
};

void add_common(CLI::App* cmd, CommonOptions* opts) {
  cmd->add_option("--config", opts->config_path, "analysis config (JSON)")
      ->required();
  cmd->add_option("--output", opts->output_path,
                  "output file (default: stdout)");
  cmd->add_option("--rank-tol", opts->rank_tol,
                  "relative singular value threshold override");
  cmd->add_option("--steps-per-orbit", opts->steps_per_orbit,
                  "RK4 steps per orbit override");
  cmd->add_option("--gramian-nodes", opts->gramian_nodes,
                  "Simpson nodes per Gramian window override");
}

magctrl::AnalysisConfig load(const CommonOptions& opts) {
  magctrl::AnalysisConfig config =
      magctrl::load_config_file(opts.config_path);
  if (opts.rank_tol > 0.0) config.numerics.rank_tol = opts.rank_tol;
  if (opts.steps_per_orbit > 0) {
    config.numerics.steps_per_orbit = opts.steps_per_orbit;
  }
  if (opts.gramian_nodes > 0) {
    config.numerics.gramian_nodes = opts.gramian_nodes;
  }
  return config;
}

void emit(const CommonOptions& opts, const std::string& text) {
  if (opts.output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opts.output_path);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + opts.output_path);
  }
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"controllability analysis for magnetic attitude control"};
  app.require_subcommand(1);

  CommonOptions check_opts;
  CLI::App* check = app.add_subcommand(
      "check", "analytic + numeric controllability assessment");
  add_common(check, &check_opts);

  CommonOptions field_opts;
  int field_samples = 360;
  int field_orbits = 1;
  CLI::App* field =
      app.add_subcommand("field", "dipole field samples along the orbit");
  add_common(field, &field_opts);
  field->add_option("--samples", field_samples, "samples per orbit (>= 2)");
  field->add_option("--orbits", field_orbits, "number of orbits");

  CommonOptions kmat_opts;
  std::optional<double> kmat_time;
  std::optional<int> kmat_sweep;
  CLI::App* kmat = app.add_subcommand(
      "kmatrices", "singular values and rank of [K0|K1|K2]");
  add_common(kmat, &kmat_opts);
  kmat->add_option("--time", kmat_time, "single evaluation time, s");
  kmat->add_option("--sweep", kmat_sweep, "sweep steps over one orbit");

  CommonOptions gram_opts;
  int gram_orbits = 1;
  CLI::App* gram =
      app.add_subcommand("gramian", "controllability Gramian and spectrum");
  add_common(gram, &gram_opts);
  gram->add_option("--orbits", gram_orbits, "integration window in orbits");

  CommonOptions steer_opts;
  std::vector<double> x0_values;
  CLI::App* steer = app.add_subcommand(
      "steer", "minimum-energy steering of the state to the origin");
  add_common(steer, &steer_opts);
  steer
      ->add_option("--x0", x0_values,
                   "initial state: q1 q2 q3 w1 w2 w3")
      ->expected(6)
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) {
      const magctrl::AnalysisConfig config = load(check_opts);
      const magctrl::ControllabilityReport report = magctrl::run_check(config);
      std::cerr << magctrl::report_to_text(report);
      emit(check_opts, magctrl::report_to_json(report) + "\n");
    } else if (field->parsed()) {
      const magctrl::AnalysisConfig config = load(field_opts);
      std::ostringstream out;
      magctrl::write_field_csv(out, config, field_samples, field_orbits);
      emit(field_opts, out.str());
    } else if (kmat->parsed()) {
      const magctrl::AnalysisConfig config = load(kmat_opts);
      std::ostringstream out;
      magctrl::write_kmatrices_csv(out, config, kmat_time, kmat_sweep);
      emit(kmat_opts, out.str());
    } else if (gram->parsed()) {
      const magctrl::AnalysisConfig config = load(gram_opts);
      emit(gram_opts, magctrl::gramian_to_json(config, gram_orbits) + "\n");
    } else if (steer->parsed()) {
      const magctrl::AnalysisConfig config = load(steer_opts);
      magctrl::Vector6d x0;
      for (int i = 0; i < 6; ++i) x0(i) = x0_values[static_cast<size_t>(i)];
      std::ostringstream out;
      const magctrl::ManeuverResult result =
          magctrl::write_steer_csv(out, config, x0);
      emit(steer_opts, out.str());
      std::cerr << "final_norm_ratio=" << result.final_norm_ratio
                << " energy=" << result.energy << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
