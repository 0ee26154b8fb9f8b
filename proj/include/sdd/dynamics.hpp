#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdd/scheme.hpp"
#include "sdd/stochastic.hpp"
#include "sdd/types.hpp"

namespace sdd::dynamics {

// Hermitian error operator B and noise strength gamma (units 1/time).
struct NoiseModel {
  ComplexMatrix error_operator;
  double gamma = 0.0;
};

NoiseModel make_noise(ComplexMatrix error_operator, double gamma);

// A simulated system: full Hamiltonian, initial density matrix, the site
// partition, and the ideal reference evolution on the protected subsystem.
struct Scenario {
  ComplexMatrix hamiltonian;
  ComplexMatrix initial_state;
  std::vector<int> site_dims;
  std::vector<int> protected_sites;
  ComplexMatrix ideal_generator;   // acts on the protected subsystem
  ComplexVector reference_state;   // |Psi(0)> on the protected subsystem
  std::string label;
};

void validate_scenario(const Scenario& scenario);

// Reduced state of the protected subsystem.
ComplexMatrix protected_state(const Scenario& scenario, const ComplexMatrix& rho);

struct TrajectoryResult {
  std::vector<double> times;
  std::vector<ComplexMatrix> states;
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;
  std::vector<double> wiener_terminals;
};

// Finite-N noisy pulse evolution after time t:
//   U_N(t) = prod_{k=0}^{N-1} [ e^{-i sqrt(gamma) B w_t/N} u_{(k mod M)+1} ] e^{-iHt/N},
// free evolution acting first in each slot; the identical noise factor
// multiplies every pulse of the run (one shared Wiener draw w_t).
ComplexMatrix propagate_finite_pulses(const Scenario& scenario,
                                      const scheme::DecouplingScheme& pulse_scheme,
                                      const NoiseModel& noise, double t, int n_pulses,
                                      double w_t);

// Split-step realization of the limit evolution along one Wiener path:
// each step applies e^{-i H_eff dt} e^{-i sqrt(gamma) B_eff dW}. Exact when
// [H_eff, B_eff] = 0 and weak-order-1 consistent otherwise; every step is
// exactly unitary. States are recorded after every `record_stride` steps
// (plus the initial state).
TrajectoryResult continuous_trajectory(const ComplexMatrix& h_eff, const ComplexMatrix& b_eff,
                                       double gamma, const ComplexMatrix& rho0,
                                       const stochastic::WienerPath& path,
                                       int record_stride = 1);

// Deterministic averaged master equation
//   drho/dt = -i[H,rho] - (gamma/2)[B,[B,rho]]
// solved by exponentiating the vectorized superoperator. States recorded at
// times k*t/steps for k = 0..steps.
TrajectoryResult averaged_lindblad(const ComplexMatrix& h_eff, const ComplexMatrix& b_eff,
                                   double gamma, const ComplexMatrix& rho0, double t,
                                   int steps);

// Closed-form phase-damped oscillator solution in the Fock basis:
//   rho_{n,m}(t) = e^{-i w_a (n-m) t} e^{-(n-m)^2 gamma t / 2} rho_{n,m}(0).
ComplexMatrix phase_damped_solution(const ComplexMatrix& rho0, double omega_a, double gamma,
                                    double t);

// e^{-i * ideal_generator * t} |Psi(0)> on the protected subsystem.
ComplexVector ideal_reference(const Scenario& scenario, double t);

// Ensemble-averaged noisy pulse e^{-(gamma/2) B^2 t} u0 (a contraction).
ComplexMatrix averaged_pulse(const NoiseModel& noise, const ComplexMatrix& u0, double t);

// Row-major vectorization helpers for the superoperator route.
ComplexVector vectorize(const ComplexMatrix& m);
ComplexMatrix unvectorize(const ComplexVector& v, Eigen::Index dim);
ComplexMatrix lindblad_superoperator(const ComplexMatrix& h_eff, const ComplexMatrix& b_eff,
                                     double gamma);

}  // namespace sdd::dynamics
