#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sdd/experiments.hpp"

namespace {

struct GlobalOptions {
  std::string config_path;
  std::string out_path;
  int threads = 1;
  long seed_override = -1;
  long trials_override = -1;
};

sdd::experiments::Experiment load_experiment(const GlobalOptions& opts) {
  auto cfg = sdd::config::Config::from_file(opts.config_path);
  if (opts.seed_override >= 0) cfg.set("run.seed", std::to_string(opts.seed_override));
  if (opts.trials_override >= 0) cfg.set("run.trials", std::to_string(opts.trials_override));
  auto exp = sdd::experiments::build_experiment(cfg);
  exp.threads = opts.threads;
  return exp;
}

void emit(const GlobalOptions& opts, const std::string& text) {
  if (opts.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opts.out_path, std::ios::binary);
  if (!out) throw sdd::ConfigError("cannot open output file '" + opts.out_path + "'");
  out << text;
}

void add_global_options(CLI::App* cmd, GlobalOptions& opts) {
  cmd->add_option("--config", opts.config_path, "experiment configuration file")->required();
  cmd->add_option("--out", opts.out_path, "output file (default: stdout)");
  cmd->add_option("--threads", opts.threads, "trajectory worker threads")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opts.seed_override, "override run.seed");
  cmd->add_option("--trials", opts.trials_override, "override run.trials");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic dynamical decoupling simulator"};
  app.require_subcommand(1);

  GlobalOptions opts;
  auto* limits = app.add_subcommand("limits", "continuous-control limit operators");
  auto* sweep = app.add_subcommand("sweep-pulses", "fidelity vs pulse count (CSV)");
  auto* traj = app.add_subcommand("trajectories", "fidelity vs gamma*t with analytic curve (CSV)");
  auto* bounds = app.add_subcommand("bounds", "convergence bounds vs empirical distance (CSV)");
  for (auto* cmd : {limits, sweep, traj, bounds}) add_global_options(cmd, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    const auto exp = load_experiment(opts);
    std::ostringstream out;
    if (limits->parsed()) {
      sdd::experiments::write_limits(out, exp, sdd::experiments::run_limits(exp));
    } else if (sweep->parsed()) {
      sdd::experiments::write_sweep_csv(out, exp, sdd::experiments::run_sweep_pulses(exp));
    } else if (traj->parsed()) {
      sdd::experiments::write_trajectories_csv(out, exp,
                                               sdd::experiments::run_trajectories(exp));
    } else {
      sdd::experiments::write_bounds_csv(out, exp, sdd::experiments::run_bounds(exp));
    }
    emit(opts, out.str());
  } catch (const sdd::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 2;
  } catch (const sdd::Error& err) {
    std::cerr << "numerical failure: " << err.what() << "\n";
    return 3;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 3;
  }
  return 0;
}
