#pragma once

#include <cstdint>

#include "sdd/dynamics.hpp"
#include "sdd/types.hpp"

namespace sdd::bounds {

// Norms and parameters entering the convergence inequalities.
struct BoundInputs {
  double h_norm = 0.0;    // ||H||_op
  double b_norm = 0.0;    // ||B||_op
  double rho_norm = 1.0;  // ||rho(0)||_op
  double gamma = 0.0;
  double t = 0.0;
  int n_pulses = 1;
  int cycle_length = 1;
};

// Deterministic cycle bound (arbitrary cycle length L with cycle unitary 1):
//   ||rho_N - rho_{N+L}|| <= ||rho|| (e^{2 L ||H|| t / N} - 1)
//                          + L ||rho|| (e^{2 ||H|| t / N} - 1).
double deterministic_cycle_bound(const BoundInputs& in);

// Single-step bound with the caller-supplied pulse-difference term
// ||rho_N - u_{N+1} rho_N u_{N+1}^dag||.
double single_step_bound(const BoundInputs& in, double pulse_difference_norm);

// Averaged stochastic bounds for cycle lengths 2 and 4:
//   E||rho_N - rho_{N+2}|| <= ||rho|| ( e^{4||H||t/N}
//     + 2 e^{2[||H||/N + 2 gamma ||B||^2/(N+2)^2] t}
//     + e^{4 sqrt(gamma t (N+1)) ||B||/(N+2)} - 4 ),
// and the analogous N+4 form with prefactors 8, 4, 8 and offset 6.
double stochastic_bound_cycle2(const BoundInputs& in);
double stochastic_bound_cycle4(const BoundInputs& in);

// The derivations assume t/N^3 << 1; false when t/N^3 > 1e-2 so callers can
// surface a warning (the formulas stay evaluable).
bool regime_ok(const BoundInputs& in);

struct EmpiricalDistance {
  double mean = 0.0;
  double std_dev = 0.0;
  long trials = 0;
};

// Monte Carlo estimate of E||rho_N(t) - rho_{N+L}(t)||_op with the two
// evolutions coupled through correlated_pair inside each trial. Trials run
// in parallel when threads > 1; the reduction order is fixed.
EmpiricalDistance empirical_distance(const dynamics::Scenario& scenario,
                                     const scheme::DecouplingScheme& pulse_scheme,
                                     const dynamics::NoiseModel& noise, double t, int n_pulses,
                                     long trials, std::uint64_t master_seed, int threads = 1);

}  // namespace sdd::bounds
