#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "sdd/bounds.hpp"
#include "sdd/config.hpp"
#include "sdd/dynamics.hpp"
#include "sdd/metrics.hpp"
#include "sdd/scenarios.hpp"

namespace sdd::experiments {

inline constexpr const char* kVersion = "0.1.0";

// A fully resolved experiment: scenario, scheme, noise and run parameters,
// built from a validated Config.
struct Experiment {
  std::string scenario_name;
  dynamics::Scenario scenario;
  scheme::DecouplingScheme pulse_scheme;
  dynamics::NoiseModel noise;
  double t = 1.0;
  long trials = 1;
  std::uint64_t master_seed = 0;
  int threads = 1;

  std::vector<long> sweep_n;  // sweep-pulses

  double gamma_t_max = 1.0;  // trajectories
  int samples = 21;
  int steps_per_unit = 1000;
  bool refine = true;

  std::vector<long> bound_n;  // bounds

  std::uint64_t config_hash = 0;
};

Experiment build_experiment(const config::Config& cfg);

struct LimitsReport {
  ComplexMatrix h_eff;
  ComplexMatrix b_eff;
  double h_norm = 0.0;
  double b_norm = 0.0;
  double h_commutator_norm = 0.0;
  double b_commutator_norm = 0.0;
  bool decoupled = false;  // both norms <= 1e-10
};

LimitsReport run_limits(const Experiment& exp);

struct SweepResult {
  metrics::FidelityCurve curve;  // abscissa = pulse counts
  double max_leakage = 0.0;      // top-two Fock level population, bosonic sites
};

SweepResult run_sweep_pulses(const Experiment& exp);

struct TrajectoryCurves {
  std::vector<double> gamma_t;
  std::vector<double> mean_f;
  std::vector<double> std_f;
  std::vector<double> analytic_f;
  std::vector<double> single_f;        // trajectory 0
  Eigen::MatrixXd all_fidelities;      // trials x samples
  int steps_per_segment = 0;
};

TrajectoryCurves run_trajectories(const Experiment& exp);

struct BoundsRow {
  long n_pulses = 0;
  double bound = 0.0;
  double empirical_mean = 0.0;
  double empirical_std = 0.0;
  double slack = 0.0;  // bound - (mean + 3 * std / sqrt(trials))
  bool regime_ok = true;
};

struct BoundsTable {
  std::vector<BoundsRow> rows;
  int cycle_length = 0;
};

BoundsTable run_bounds(const Experiment& exp);

// CSV/report serialization; every file starts with a comment header naming
// the tool version, config hash and master seed (no timestamps).
void write_limits(std::ostream& out, const Experiment& exp, const LimitsReport& report);
void write_sweep_csv(std::ostream& out, const Experiment& exp, const SweepResult& result);
void write_trajectories_csv(std::ostream& out, const Experiment& exp,
                            const TrajectoryCurves& curves);
void write_bounds_csv(std::ostream& out, const Experiment& exp, const BoundsTable& table);

// Round-trip-safe numeric formatting (17 significant digits).
std::string format_number(double value);

}  // namespace sdd::experiments
