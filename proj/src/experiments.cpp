#include "sdd/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <sstream>

#include "sdd/linalg.hpp"
#include "sdd/parallel.hpp"

namespace sdd::experiments {

namespace {

const std::set<std::string> kKnownKeys = {
    "scenario.name",        "scenario.omega",        "scenario.coupling",
    "scenario.initial",     "scenario.bath_size",    "scenario.omega_profile",
    "scenario.coupling_list", "scenario.omega_a",    "scenario.omega_b",
    "scenario.truncation_a", "scenario.truncation_b", "scenario.coherent_alpha",
    "scenario.fock_level",  "scheme.pulses",         "noise.gamma",
    "noise.gamma_t",        "noise.b_all",           "noise.b_number",
    "noise.b_linear",       "run.t",                 "run.trials",
    "run.seed",             "run.sweep_n",           "run.gamma_t_max",
    "run.samples",          "run.steps_per_unit",    "run.refine",
    "run.bound_n",
};

bool is_known_key(const std::string& key) {
  if (kKnownKeys.count(key)) return true;
  // per-site error coefficients: noise.b1, noise.b2, ...
  if (key.rfind("noise.b", 0) == 0) {
    const std::string tail = key.substr(7);
    return !tail.empty() && std::all_of(tail.begin(), tail.end(),
                                        [](unsigned char c) { return std::isdigit(c); });
  }
  return false;
}

scenarios::InitialState parse_initial(const config::Config& cfg) {
  const std::string name = cfg.get_string("scenario.initial", "eigenstate");
  if (name == "eigenstate") return scenarios::InitialState::Eigenstate;
  if (name == "superposition") return scenarios::InitialState::Superposition;
  throw ConfigError("scenario.initial: expected eigenstate|superposition, got '" + name + "'");
}

ops::PauliCoefficients parse_site_coeffs(const config::Config& cfg, const std::string& key) {
  const auto values = cfg.get_double_list(key);
  if (values.size() != 4) {
    throw ConfigError("config key '" + key + "': expected 4 coefficients c0 cx cy cz");
  }
  return {values[0], values[1], values[2], values[3]};
}

ComplexMatrix qubit_error_operator(const config::Config& cfg, int n_sites) {
  std::vector<ops::PauliCoefficients> coeffs;
  coeffs.reserve(static_cast<std::size_t>(n_sites));
  const bool has_uniform = cfg.has("noise.b_all");
  for (int s = 1; s <= n_sites; ++s) {
    const std::string key = "noise.b" + std::to_string(s);
    if (cfg.has(key)) {
      coeffs.push_back(parse_site_coeffs(cfg, key));
    } else if (has_uniform) {
      coeffs.push_back(parse_site_coeffs(cfg, "noise.b_all"));
    } else {
      throw ConfigError("missing error-operator coefficients: set '" + key +
                        "' or 'noise.b_all'");
    }
  }
  return scenarios::product_error_operator(coeffs);
}

double resolve_gamma(const config::Config& cfg, double t) {
  if (cfg.has("noise.gamma")) return cfg.get_double("noise.gamma");
  if (cfg.has("noise.gamma_t")) {
    if (t <= 0.0) throw ConfigError("noise.gamma_t requires run.t > 0");
    return cfg.get_double("noise.gamma_t") / t;
  }
  throw ConfigError("missing noise strength: set 'noise.gamma' or 'noise.gamma_t'");
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

void write_header(std::ostream& out, const Experiment& exp, const char* subcommand) {
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(exp.config_hash));
  out << "# sdd " << kVersion << "\n";
  out << "# subcommand=" << subcommand << "\n";
  out << "# config_hash=" << hash << "\n";
  out << "# master_seed=" << exp.master_seed << "\n";
  out << "# scenario=" << exp.scenario_name << "\n";
}

void write_matrix(std::ostream& out, const std::string& name, const ComplexMatrix& m) {
  out << name << " dim=" << m.rows() << "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << " ";
      out << "(" << format_number(m(i, j).real()) << "," << format_number(m(i, j).imag())
          << ")";
    }
    out << "\n";
  }
}

}  // namespace

std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

Experiment build_experiment(const config::Config& cfg) {
  for (const auto& [key, value] : cfg.entries()) {
    if (!is_known_key(key)) throw ConfigError("unknown config key '" + key + "'");
  }

  Experiment exp;
  exp.config_hash = cfg.content_hash();
  exp.scenario_name = cfg.get_string("scenario.name");
  exp.t = cfg.get_double("run.t", 1.0);
  if (exp.t < 0.0) throw ConfigError("run.t must be >= 0");
  exp.trials = cfg.get_int("run.trials", 1);
  if (exp.trials < 1) throw ConfigError("run.trials must be >= 1");
  exp.master_seed = static_cast<std::uint64_t>(cfg.get_int("run.seed", 1));

  if (exp.scenario_name == "two_qubit") {
    const double omega = cfg.get_double("scenario.omega", 1.0);
    const double coupling = cfg.get_double("scenario.coupling", omega / 10.0);
    exp.scenario = scenarios::two_qubit(omega, coupling, parse_initial(cfg));
    exp.noise = dynamics::make_noise(qubit_error_operator(cfg, 2), resolve_gamma(cfg, exp.t));
  } else if (exp.scenario_name == "spin_bath") {
    scenarios::SpinBathParams params;
    params.bath_size = static_cast<int>(cfg.get_int("scenario.bath_size", 5));
    params.omega = cfg.get_double("scenario.omega", 1.0);
    params.initial = parse_initial(cfg);
    const std::string profile = cfg.get_string("scenario.omega_profile", "uniform");
    if (profile == "uniform") {
      params.zeeman = scenarios::BathZeeman::Uniform;
    } else if (profile == "electron_only") {
      params.zeeman = scenarios::BathZeeman::ElectronOnly;
    } else {
      throw ConfigError("scenario.omega_profile: expected uniform|electron_only");
    }
    if (cfg.has("scenario.coupling_list")) {
      params.couplings = cfg.get_double_list("scenario.coupling_list");
    }
    exp.scenario = scenarios::spin_bath(params);
    exp.noise = dynamics::make_noise(
        qubit_error_operator(cfg, params.bath_size + 1), resolve_gamma(cfg, exp.t));
  } else if (exp.scenario_name == "oscillator") {
    scenarios::OscillatorParams params;
    params.omega_a = cfg.get_double("scenario.omega_a", 1.0);
    params.omega_b = cfg.get_double("scenario.omega_b", 1.0);
    params.coupling = cfg.get_double("scenario.coupling", 0.1);
    params.truncation_a = static_cast<int>(cfg.get_int("scenario.truncation_a", 10));
    params.truncation_b = static_cast<int>(cfg.get_int("scenario.truncation_b", 10));
    params.coherent_alpha = cfg.get_double("scenario.coherent_alpha", 1.0);
    if (cfg.has("scenario.fock_level")) {
      params.fock_level = static_cast<int>(cfg.get_int("scenario.fock_level"));
    }
    exp.scenario = scenarios::coupled_oscillators(params);
    exp.noise = dynamics::make_noise(
        scenarios::oscillator_error_operator(params, cfg.get_double("noise.b_number", 1.0),
                                             cfg.get_double("noise.b_linear", 1.0)),
        resolve_gamma(cfg, exp.t));
  } else {
    throw ConfigError("scenario.name: expected two_qubit|spin_bath|oscillator, got '" +
                      exp.scenario_name + "'");
  }

  exp.pulse_scheme =
      scenarios::scheme_from_tokens(cfg.get_token_list("scheme.pulses"), exp.scenario.site_dims);

  if (cfg.has("run.sweep_n")) exp.sweep_n = cfg.get_int_list("run.sweep_n");
  if (cfg.has("run.bound_n")) exp.bound_n = cfg.get_int_list("run.bound_n");
  exp.gamma_t_max = cfg.get_double("run.gamma_t_max", exp.noise.gamma * exp.t);
  exp.samples = static_cast<int>(cfg.get_int("run.samples", 21));
  if (exp.samples < 2) throw ConfigError("run.samples must be >= 2");
  exp.steps_per_unit = static_cast<int>(cfg.get_int("run.steps_per_unit", 1000));
  if (exp.steps_per_unit < 1) throw ConfigError("run.steps_per_unit must be >= 1");
  const std::string refine = cfg.get_string("run.refine", "on");
  if (refine != "on" && refine != "off") throw ConfigError("run.refine: expected on|off");
  exp.refine = refine == "on";
  return exp;
}

LimitsReport run_limits(const Experiment& exp) {
  const auto limits =
      scheme::scheme_limit(exp.pulse_scheme, exp.scenario.hamiltonian, exp.noise.error_operator);
  LimitsReport report;
  report.h_eff = limits.effective_hamiltonian;
  report.b_eff = limits.effective_error;
  report.h_norm = linalg::operator_norm(report.h_eff);
  report.b_norm = linalg::operator_norm(report.b_eff);
  report.h_commutator_norm =
      linalg::operator_norm(commutator(report.h_eff, exp.pulse_scheme.cycle_unitary));
  report.b_commutator_norm =
      linalg::operator_norm(commutator(report.b_eff, exp.pulse_scheme.cycle_unitary));
  report.decoupled = report.h_norm <= 1e-10 && report.b_norm <= 1e-10;
  return report;
}

SweepResult run_sweep_pulses(const Experiment& exp) {
  if (exp.sweep_n.empty()) throw ConfigError("sweep-pulses requires run.sweep_n");
  for (long n : exp.sweep_n) {
    if (n < 1 || n % exp.pulse_scheme.cycle_length() != 0) {
      throw ConfigError("run.sweep_n: every N must be a positive multiple of the cycle length");
    }
  }
  const ComplexVector reference = dynamics::ideal_reference(exp.scenario, exp.t);
  const bool bosonic = std::any_of(exp.scenario.site_dims.begin(), exp.scenario.site_dims.end(),
                                   [](int d) { return d > 2; });

  SweepResult result;
  result.curve.trials = exp.trials;
  result.curve.seed = exp.master_seed;
  std::vector<double> fidelities(static_cast<std::size_t>(exp.trials));
  std::vector<double> leakages(static_cast<std::size_t>(exp.trials), 0.0);
  for (long n : exp.sweep_n) {
    parallel_trials(exp.trials, exp.threads, [&](long trial) {
      stochastic::RngStream stream(exp.master_seed, static_cast<std::uint64_t>(trial));
      const double w_t = stochastic::sample_terminal(stream, exp.t);
      const ComplexMatrix rho = dynamics::propagate_finite_pulses(
          exp.scenario, exp.pulse_scheme, exp.noise, exp.t, static_cast<int>(n), w_t);
      fidelities[static_cast<std::size_t>(trial)] =
          metrics::fidelity(reference, dynamics::protected_state(exp.scenario, rho));
      if (bosonic) {
        double worst = 0.0;
        for (std::size_t s = 0; s < exp.scenario.site_dims.size(); ++s) {
          if (exp.scenario.site_dims[s] > 2) {
            worst = std::max(worst, ops::top_level_population(rho, exp.scenario.site_dims,
                                                              static_cast<int>(s)));
          }
        }
        leakages[static_cast<std::size_t>(trial)] = worst;
      }
    });
    const auto stats = metrics::ensemble_stats(fidelities);
    result.curve.abscissa.push_back(static_cast<double>(n));
    result.curve.mean.push_back(stats.mean);
    result.curve.std_dev.push_back(stats.std_dev);
    for (double leak : leakages) result.max_leakage = std::max(result.max_leakage, leak);
  }
  return result;
}

TrajectoryCurves run_trajectories(const Experiment& exp) {
  const double gamma = exp.noise.gamma;
  const auto limits =
      scheme::scheme_limit(exp.pulse_scheme, exp.scenario.hamiltonian, exp.noise.error_operator);
  const ComplexMatrix& h_eff = limits.effective_hamiltonian;
  const ComplexMatrix& b_eff = limits.effective_error;
  const int segments = exp.samples - 1;
  const double dt_segment = exp.t / static_cast<double>(segments);

  // Base resolution: steps_per_unit steps per unit of gamma*t, at least one
  // step per sample segment.
  int per_segment = std::max(
      1, static_cast<int>(std::ceil(exp.steps_per_unit * gamma * dt_segment)));
  if (exp.refine && gamma > 0.0) {
    // Halve the step size until the terminal fidelity along a single path is
    // stable to 1e-4; the coarse run uses the pairwise-summed fine path so
    // both resolutions see the same Brownian motion.
    const ComplexVector reference = dynamics::ideal_reference(exp.scenario, exp.t);
    for (int round = 0; round < 6; ++round) {
      stochastic::RngStream probe(exp.master_seed, 0);
      const auto fine_path =
          stochastic::sample_path(probe, exp.t, 2 * per_segment * segments);
      const auto coarse_path = stochastic::coarsen_path(fine_path);
      auto final_fidelity = [&](const stochastic::WienerPath& path) {
        const auto trajectory = dynamics::continuous_trajectory(
            h_eff, b_eff, gamma, exp.scenario.initial_state, path, path.n_steps());
        return metrics::fidelity(
            reference, dynamics::protected_state(exp.scenario, trajectory.states.back()));
      };
      if (std::abs(final_fidelity(fine_path) - final_fidelity(coarse_path)) < 1e-4) break;
      per_segment *= 2;
    }
  }
  const int total_steps = per_segment * segments;

  TrajectoryCurves curves;
  curves.steps_per_segment = per_segment;
  curves.gamma_t.resize(static_cast<std::size_t>(exp.samples));
  for (int j = 0; j < exp.samples; ++j) {
    curves.gamma_t[static_cast<std::size_t>(j)] = gamma * dt_segment * j;
  }
  curves.all_fidelities.resize(exp.trials, exp.samples);

  std::vector<ComplexVector> references(static_cast<std::size_t>(exp.samples));
  for (int j = 0; j < exp.samples; ++j) {
    references[static_cast<std::size_t>(j)] =
        dynamics::ideal_reference(exp.scenario, dt_segment * j);
  }

  parallel_trials(exp.trials, exp.threads, [&](long trial) {
    stochastic::RngStream stream(exp.master_seed, static_cast<std::uint64_t>(trial));
    const auto path = stochastic::sample_path(stream, exp.t, total_steps);
    const auto trajectory = dynamics::continuous_trajectory(
        h_eff, b_eff, gamma, exp.scenario.initial_state, path, per_segment);
    for (int j = 0; j < exp.samples; ++j) {
      curves.all_fidelities(trial, j) = metrics::fidelity(
          references[static_cast<std::size_t>(j)],
          dynamics::protected_state(exp.scenario, trajectory.states[static_cast<std::size_t>(j)]));
    }
  });

  const auto analytic = dynamics::averaged_lindblad(h_eff, b_eff, gamma,
                                                    exp.scenario.initial_state, exp.t, segments);
  curves.mean_f.resize(static_cast<std::size_t>(exp.samples));
  curves.std_f.resize(static_cast<std::size_t>(exp.samples));
  curves.analytic_f.resize(static_cast<std::size_t>(exp.samples));
  curves.single_f.resize(static_cast<std::size_t>(exp.samples));
  std::vector<double> column(static_cast<std::size_t>(exp.trials));
  for (int j = 0; j < exp.samples; ++j) {
    for (long i = 0; i < exp.trials; ++i) {
      column[static_cast<std::size_t>(i)] = curves.all_fidelities(i, j);
    }
    const auto stats = metrics::ensemble_stats(column);
    curves.mean_f[static_cast<std::size_t>(j)] = stats.mean;
    curves.std_f[static_cast<std::size_t>(j)] = stats.std_dev;
    curves.analytic_f[static_cast<std::size_t>(j)] = metrics::fidelity(
        references[static_cast<std::size_t>(j)],
        dynamics::protected_state(exp.scenario, analytic.states[static_cast<std::size_t>(j)]));
    curves.single_f[static_cast<std::size_t>(j)] = curves.all_fidelities(0, j);
  }
  return curves;
}

BoundsTable run_bounds(const Experiment& exp) {
  if (exp.bound_n.empty()) throw ConfigError("bounds requires run.bound_n");
  const int cycle = exp.pulse_scheme.cycle_length();
  if (cycle != 2 && cycle != 4) {
    throw ConfigError("bounds: stochastic bounds exist for cycle lengths 2 and 4 only");
  }
  bounds::BoundInputs in;
  in.h_norm = linalg::operator_norm(exp.scenario.hamiltonian);
  in.b_norm = linalg::operator_norm(exp.noise.error_operator);
  in.rho_norm = linalg::operator_norm(exp.scenario.initial_state);
  in.gamma = exp.noise.gamma;
  in.t = exp.t;
  in.cycle_length = cycle;

  BoundsTable table;
  table.cycle_length = cycle;
  for (long n : exp.bound_n) {
    if (n < 1 || n % cycle != 0) {
      throw ConfigError("run.bound_n: every N must be a positive multiple of the cycle length");
    }
    in.n_pulses = static_cast<int>(n);
    BoundsRow row;
    row.n_pulses = n;
    row.bound = cycle == 2 ? bounds::stochastic_bound_cycle2(in)
                           : bounds::stochastic_bound_cycle4(in);
    const auto empirical =
        bounds::empirical_distance(exp.scenario, exp.pulse_scheme, exp.noise, exp.t,
                                   static_cast<int>(n), exp.trials, exp.master_seed, exp.threads);
    row.empirical_mean = empirical.mean;
    row.empirical_std = empirical.std_dev;
    row.slack = row.bound - (row.empirical_mean +
                             3.0 * row.empirical_std / std::sqrt(static_cast<double>(exp.trials)));
    row.regime_ok = bounds::regime_ok(in);
    table.rows.push_back(row);
  }
  return table;
}

void write_limits(std::ostream& out, const Experiment& exp, const LimitsReport& report) {
  write_header(out, exp, "limits");
  write_matrix(out, "H_eff", report.h_eff);
  write_matrix(out, "B_eff", report.b_eff);
  out << "norm_H_eff=" << format_number(report.h_norm) << "\n";
  out << "norm_B_eff=" << format_number(report.b_norm) << "\n";
  out << "norm_commutator_H_U=" << format_number(report.h_commutator_norm) << "\n";
  out << "norm_commutator_B_U=" << format_number(report.b_commutator_norm) << "\n";
  out << "decoupled=" << (report.decoupled ? "true" : "false") << "\n";
}

void write_sweep_csv(std::ostream& out, const Experiment& exp, const SweepResult& result) {
  write_header(out, exp, "sweep-pulses");
  if (result.max_leakage > 0.0) {
    out << "# max_top_level_population=" << format_number(result.max_leakage) << "\n";
    if (result.max_leakage > 1e-6) {
      out << "# warning: Fock truncation leakage above 1e-6; increase the truncation\n";
    }
  }
  out << "N,mean_fidelity,std_fidelity,trials,seed\n";
  for (std::size_t k = 0; k < result.curve.abscissa.size(); ++k) {
    out << static_cast<long>(result.curve.abscissa[k]) << ","
        << format_number(result.curve.mean[k]) << "," << format_number(result.curve.std_dev[k])
        << "," << result.curve.trials << "," << result.curve.seed << "\n";
  }
}

void write_trajectories_csv(std::ostream& out, const Experiment& exp,
                            const TrajectoryCurves& curves) {
  write_header(out, exp, "trajectories");
  out << "# steps_per_segment=" << curves.steps_per_segment << "\n";
  out << "gamma_t,mean_F,std_F,analytic_F,single_realization_F\n";
  for (std::size_t j = 0; j < curves.gamma_t.size(); ++j) {
    out << format_number(curves.gamma_t[j]) << "," << format_number(curves.mean_f[j]) << ","
        << format_number(curves.std_f[j]) << "," << format_number(curves.analytic_f[j]) << ","
        << format_number(curves.single_f[j]) << "\n";
  }
}

void write_bounds_csv(std::ostream& out, const Experiment& exp, const BoundsTable& table) {
  write_header(out, exp, "bounds");
  for (const auto& row : table.rows) {
    if (!row.regime_ok) {
      out << "# warning: t/N^3 > 1e-2 at N=" << row.n_pulses
          << "; the averaged bound assumes t/N^3 << 1\n";
    }
  }
  out << "N,bound,empirical_mean,empirical_std,slack\n";
  for (const auto& row : table.rows) {
    out << row.n_pulses << "," << format_number(row.bound) << ","
        << format_number(row.empirical_mean) << "," << format_number(row.empirical_std) << ","
        << format_number(row.slack) << "\n";
  }
}

}  // namespace sdd::experiments
