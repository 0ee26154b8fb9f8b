#include "sdd/bounds.hpp"

#include <cmath>

#include "sdd/metrics.hpp"
#include "sdd/parallel.hpp"

namespace sdd::bounds {

namespace {

void validate(const BoundInputs& in) {
  if (in.h_norm < 0.0 || in.b_norm < 0.0 || in.rho_norm < 0.0) {
    throw Error("bounds: operator norms must be >= 0");
  }
  if (in.gamma < 0.0) throw Error("bounds: gamma must be >= 0");
  if (!(in.t >= 0.0)) throw NegativeTime("bounds: time must be >= 0");
  if (in.n_pulses < 1 || in.cycle_length < 1) {
    throw Error("bounds: pulse and cycle counts must be >= 1");
  }
}

double stochastic_bound(const BoundInputs& in, int cycle) {
  validate(in);
  const double n = static_cast<double>(in.n_pulses);
  const double l = static_cast<double>(cycle);
  const double free_term = std::exp(2.0 * l * in.h_norm * in.t / n);
  const double mixed_term =
      std::exp(2.0 * (in.h_norm / n + 2.0 * in.gamma * in.b_norm * in.b_norm / ((n + l) * (n + l))) *
               in.t);
  const double noise_term =
      std::exp(2.0 * l * std::sqrt(in.gamma * in.t * (n + 1.0)) * in.b_norm / (n + l));
  return in.rho_norm * (free_term + l * mixed_term + noise_term - (l + 2.0));
}

}  // namespace

double deterministic_cycle_bound(const BoundInputs& in) {
  validate(in);
  const double n = static_cast<double>(in.n_pulses);
  const double l = static_cast<double>(in.cycle_length);
  return in.rho_norm * (std::exp(2.0 * l * in.h_norm * in.t / n) - 1.0) +
         l * in.rho_norm * (std::exp(2.0 * in.h_norm * in.t / n) - 1.0);
}

double single_step_bound(const BoundInputs& in, double pulse_difference_norm) {
  validate(in);
  if (pulse_difference_norm < 0.0) throw Error("bounds: pulse difference norm must be >= 0");
  const double n = static_cast<double>(in.n_pulses);
  return 2.0 * in.rho_norm * (std::exp(2.0 * in.h_norm * in.t / n) - 1.0) +
         pulse_difference_norm;
}

double stochastic_bound_cycle2(const BoundInputs& in) { return stochastic_bound(in, 2); }

double stochastic_bound_cycle4(const BoundInputs& in) { return stochastic_bound(in, 4); }

bool regime_ok(const BoundInputs& in) {
  const double n = static_cast<double>(in.n_pulses);
  return in.t / (n * n * n) <= 1e-2;
}

EmpiricalDistance empirical_distance(const dynamics::Scenario& scenario,
                                     const scheme::DecouplingScheme& pulse_scheme,
                                     const dynamics::NoiseModel& noise, double t, int n_pulses,
                                     long trials, std::uint64_t master_seed, int threads) {
  const int cycle = pulse_scheme.cycle_length();
  if (n_pulses % cycle != 0) {
    throw NotCycleMultiple("empirical_distance: N must be a cycle multiple");
  }
  if (trials < 1) throw EmptyEnsemble("empirical_distance: need at least one trial");

  std::vector<double> distances(static_cast<std::size_t>(trials), 0.0);
  parallel_trials(trials, threads, [&](long i) {
    stochastic::RngStream stream(master_seed, static_cast<std::uint64_t>(i));
    // propagate_finite_pulses expects the run-level terminal value W_t whose
    // per-pulse share is W_t/N; the coupled draws are the per-pulse values
    // W_{t/N^2} and W_{t/(N+L)^2}, so scale back up by the pulse counts.
    const auto pair = stochastic::correlated_pair(stream, t, n_pulses, cycle);
    const ComplexMatrix rho_n = dynamics::propagate_finite_pulses(
        scenario, pulse_scheme, noise, t, n_pulses, pair.w_coarse * n_pulses);
    const ComplexMatrix rho_nl = dynamics::propagate_finite_pulses(
        scenario, pulse_scheme, noise, t, n_pulses + cycle,
        pair.w_fine * (n_pulses + cycle));
    distances[static_cast<std::size_t>(i)] = metrics::opnorm_distance(rho_n, rho_nl);
  });
  const auto stats = metrics::ensemble_stats(distances);
  return {stats.mean, stats.std_dev, trials};
}

}  // namespace sdd::bounds
