#include <doctest.h>

#include <cmath>

#include "sdd/dynamics.hpp"
#include "sdd/linalg.hpp"
#include "sdd/metrics.hpp"
#include "sdd/operators.hpp"
#include "sdd/scenarios.hpp"
#include "test_helpers.hpp"

using namespace sdd;
using ops::Pauli;
using linalg::operator_norm;

namespace {

dynamics::NoiseModel two_qubit_noise(double alpha_z, double gamma) {
  return dynamics::make_noise(
      scenarios::product_error_operator({{1, 0, 0, alpha_z}, {1, 1, 1, 1}}), gamma);
}

scheme::DecouplingScheme z1_scheme() {
  const ComplexMatrix z1 = ops::tensor({ops::pauli(Pauli::Z), ComplexMatrix::Identity(2, 2)});
  return scheme::make_scheme({z1, z1});
}

}  // namespace

TEST_CASE("propagate_finite_pulses: plain evolution for the identity pulse") {
  const auto scenario = scenarios::two_qubit(1.0, 0.1, scenarios::InitialState::Superposition);
  const auto identity_scheme = scheme::make_scheme({ComplexMatrix::Identity(4, 4)});
  const auto noise = two_qubit_noise(0.5, 0.0);
  const double t = 0.9;
  const ComplexMatrix rho = dynamics::propagate_finite_pulses(scenario, identity_scheme, noise,
                                                              t, 1, 0.0);
  const ComplexMatrix u = linalg::expm_hermitian_generator(scenario.hamiltonian, t);
  const ComplexMatrix expected = u * scenario.initial_state * u.adjoint();
  CHECK(operator_norm(ComplexMatrix(rho - expected)) <= 1e-12);
}

TEST_CASE("propagate_finite_pulses rejects non-cycle-multiple N") {
  const auto scenario = scenarios::two_qubit(1.0, 0.1, scenarios::InitialState::Eigenstate);
  CHECK_THROWS_AS(dynamics::propagate_finite_pulses(scenario, z1_scheme(),
                                                    two_qubit_noise(0.5, 1.0), 1.0, 3, 0.1),
                  NotCycleMultiple);
}

TEST_CASE("propagate_finite_pulses: output is a valid state, deterministic decoupling") {
  const auto scenario = scenarios::two_qubit(1.0, 0.1, scenarios::InitialState::Eigenstate);
  const auto sch = z1_scheme();
  const auto noise = dynamics::make_noise(
      ops::tensor({ops::pauli(Pauli::Y), ops::pauli(Pauli::Y)}), 5.0);
  const double t = 10.0;

  const ComplexMatrix rho = dynamics::propagate_finite_pulses(scenario, sch, noise, t, 8, 0.7);
  CHECK(std::abs(rho.trace().real() - 1.0) <= 1e-10);
  CHECK(operator_norm(ComplexMatrix(rho - rho.adjoint())) <= 1e-10);
  const auto eig = linalg::hermitian_eig(rho);
  CHECK(eig.eigenvalues[0].real() >= -1e-9);

  // gamma = 0: the decoupled product approaches the ideal evolution and the
  // fidelity goes to 1 with growing N.
  const auto quiet = dynamics::make_noise(noise.error_operator, 0.0);
  const ComplexVector reference = dynamics::ideal_reference(scenario, t);
  double previous = 0.0;
  for (int n : {4, 64, 1024}) {
    const ComplexMatrix state =
        dynamics::propagate_finite_pulses(scenario, sch, quiet, t, n, 0.0);
    const double f =
        metrics::fidelity(reference, dynamics::protected_state(scenario, state));
    CHECK(f >= previous - 1e-12);
    previous = f;
  }
  CHECK(previous >= 0.9999);
}

TEST_CASE("commuting error acting on an eigenstate has no effect at any N") {
  const auto scenario = scenarios::two_qubit(1.0, 0.1, scenarios::InitialState::Eigenstate);
  const auto sch = z1_scheme();
  const auto zz = dynamics::make_noise(
      ops::tensor({ops::pauli(Pauli::Z), ops::pauli(Pauli::Z)}), 5.0);
  const auto quiet = dynamics::make_noise(zz.error_operator, 0.0);
  for (int n : {2, 8, 32}) {
    const ComplexMatrix noisy =
        dynamics::propagate_finite_pulses(scenario, sch, zz, 10.0, n, 1.3);
    const ComplexMatrix clean =
        dynamics::propagate_finite_pulses(scenario, sch, quiet, 10.0, n, 0.0);
    CHECK(operator_norm(ComplexMatrix(noisy - clean)) <= 1e-12);
  }
}

TEST_CASE("continuous_trajectory: closed evolution at gamma = 0 and on zero paths") {
  const ComplexMatrix h = testing::random_hermitian(4, 900);
  const ComplexMatrix b = testing::random_hermitian(4, 901);
  const ComplexMatrix rho0 = testing::random_density(4, 902);
  stochastic::WienerPath path;
  path.t_final = 1.2;
  path.increments.assign(64, 0.0);

  const auto quiet = dynamics::continuous_trajectory(h, b, 0.0, rho0, path, 64);
  const ComplexMatrix u = linalg::expm_hermitian_generator(h, 1.2);
  const ComplexMatrix expected = u * rho0 * u.adjoint();
  CHECK(operator_norm(ComplexMatrix(quiet.states.back() - expected)) <= 1e-10);

  const auto still = dynamics::continuous_trajectory(h, b, 2.5, rho0, path, 64);
  CHECK(operator_norm(ComplexMatrix(still.states.back() - expected)) <= 1e-10);
}

TEST_CASE("continuous_trajectory preserves trace, Hermiticity and positivity") {
  const ComplexMatrix h = testing::random_hermitian(4, 903);
  const ComplexMatrix b = testing::random_hermitian(4, 904);
  const ComplexMatrix rho0 = testing::random_density(4, 905);
  stochastic::RngStream stream(906, 0);
  const auto path = stochastic::sample_path(stream, 2.0, 200);
  const auto result = dynamics::continuous_trajectory(h, b, 1.5, rho0, path, 50);
  REQUIRE(result.states.size() == 5);
  for (const auto& rho : result.states) {
    CHECK(std::abs(rho.trace().real() - 1.0) <= 1e-12);
    CHECK(operator_norm(ComplexMatrix(rho - rho.adjoint())) <= 1e-12);
    CHECK(linalg::hermitian_eig(rho).eigenvalues[0].real() >= -1e-9);
  }
}

TEST_CASE("averaged_lindblad: unitary limit, trivial dissipator, trace preservation") {
  const ComplexMatrix h = testing::random_hermitian(3, 907);
  const ComplexMatrix b = testing::random_hermitian(3, 908);
  const ComplexMatrix rho0 = testing::random_density(3, 909);
  const double t = 0.8;

  const auto closed = dynamics::averaged_lindblad(h, b, 0.0, rho0, t, 10);
  const ComplexMatrix u = linalg::expm_hermitian_generator(h, t);
  CHECK(operator_norm(ComplexMatrix(closed.states.back() - u * rho0 * u.adjoint())) <= 1e-10);

  // B proportional to the identity: the double commutator vanishes.
  const ComplexMatrix b_id = 3.0 * ComplexMatrix::Identity(3, 3);
  const auto trivial = dynamics::averaged_lindblad(h, b_id, 2.0, rho0, t, 10);
  CHECK(operator_norm(ComplexMatrix(trivial.states.back() - u * rho0 * u.adjoint())) <= 1e-10);

  const auto noisy = dynamics::averaged_lindblad(h, b, 2.0, rho0, t, 10);
  for (const auto& rho : noisy.states) {
    CHECK(std::abs(rho.trace().real() - 1.0) <= 1e-10);
  }
  CHECK_THROWS_AS(dynamics::averaged_lindblad(ComplexMatrix::Identity(20, 20),
                                              ComplexMatrix::Identity(20, 20), 1.0,
                                              ComplexMatrix::Identity(20, 20) / 20.0, 1.0, 4),
                  DimensionTooLarge);
}

TEST_CASE("sigma_z-commuting initial states are untouched by the limit noise") {
  // rho1 commutes with sigma_z, so the site-1 dynamics stays exactly ideal.
  const auto scenario = scenarios::two_qubit(1.0, 0.1, scenarios::InitialState::Eigenstate);
  const auto noise = two_qubit_noise(0.5, 2.0);
  const auto limits = scheme::scheme_limit(z1_scheme(), scenario.hamiltonian,
                                           noise.error_operator);
  const double t = 3.0;
  const auto solution =
      dynamics::averaged_lindblad(limits.effective_hamiltonian, limits.effective_error,
                                  noise.gamma, scenario.initial_state, t, 30);
  for (std::size_t k = 0; k < solution.states.size(); ++k) {
    const ComplexVector psi = dynamics::ideal_reference(scenario, solution.times[k]);
    const ComplexMatrix reduced = dynamics::protected_state(scenario, solution.states[k]);
    CHECK(operator_norm(ComplexMatrix(reduced - psi * psi.adjoint())) <= 1e-10);
  }
}

TEST_CASE("phase_damped_solution: populations frozen, coherences damped") {
  const ComplexMatrix rho0 = testing::random_density(6, 910);
  const double omega = 0.7, gamma = 1.1, t = 2.0 / 1.1;  // gamma t = 2

  const ComplexMatrix rho_diag = ComplexMatrix(rho0.diagonal().asDiagonal());
  const ComplexMatrix still = dynamics::phase_damped_solution(rho_diag, omega, gamma, 5.0);
  CHECK(operator_norm(ComplexMatrix(still - rho_diag)) <= 1e-14);

  const ComplexMatrix rho_t = dynamics::phase_damped_solution(rho0, omega, gamma, t);
  // |n - m| = 1 coherences lose exactly e^{-gamma t / 2} = e^{-1} in magnitude.
  CHECK(std::abs(rho_t(2, 3)) ==
        doctest::Approx(std::abs(rho0(2, 3)) * std::exp(-1.0)).epsilon(1e-12));
  for (int n = 0; n < 6; ++n) {
    CHECK(std::abs(rho_t(n, n) - rho0(n, n)) <= 1e-14);
  }
}

TEST_CASE("phase_damped_solution matches the superoperator master equation") {
  const int d = 10;
  const auto [a, a_dag] = ops::boson_ladder(ops::BosonicSpace{d});
  const ComplexMatrix number = a_dag * a;
  const double omega = 1.3, gamma = 0.9, t = 1.0 / 0.9;  // gamma t = 1

  // Truncated coherent-like initial state.
  ComplexVector psi(d);
  for (int n = 0; n < d; ++n) psi[n] = std::exp(-0.1 * n) * Complex(1.0, 0.3 * n);
  psi /= psi.norm();
  const ComplexMatrix rho0 = psi * psi.adjoint();

  const auto numeric =
      dynamics::averaged_lindblad(ComplexMatrix(omega * number), number, gamma, rho0, t, 8);
  const ComplexMatrix analytic = dynamics::phase_damped_solution(rho0, omega, gamma, t);
  CHECK(operator_norm(ComplexMatrix(numeric.states.back() - analytic)) <= 1e-8);
}

TEST_CASE("ideal_reference: trivial values and eigenstate phase invariance") {
  const auto scenario = scenarios::two_qubit(2.0, 0.1, scenarios::InitialState::Superposition);
  const ComplexVector psi0 = dynamics::ideal_reference(scenario, 0.0);
  CHECK((psi0 - scenario.reference_state).norm() <= 1e-14);

  // omega t = pi rotates |+> to (|0> - |1>)/sqrt(2) up to a global phase.
  const ComplexVector psi = dynamics::ideal_reference(scenario, M_PI / 2.0);
  const Complex ratio = psi[1] / psi[0];
  CHECK(std::abs(ratio + 1.0) <= 1e-12);

  const auto eigen_scenario = scenarios::two_qubit(2.0, 0.1, scenarios::InitialState::Eigenstate);
  const ComplexVector evolved = dynamics::ideal_reference(eigen_scenario, 1.7);
  CHECK(std::abs(std::abs(evolved[0]) - 1.0) <= 1e-12);
}

TEST_CASE("averaged_pulse: decay law and Monte Carlo consistency") {
  const ComplexMatrix u0 = testing::random_unitary(4, 911);
  const ComplexMatrix b = ops::tensor({ops::pauli(Pauli::Y), ops::pauli(Pauli::Y)});  // B^2 = 1
  const double gamma = 0.8, t = 1.5;
  const auto noise = dynamics::make_noise(b, gamma);

  CHECK(operator_norm(ComplexMatrix(dynamics::averaged_pulse(noise, u0, 0.0) - u0)) <= 1e-12);

  const ComplexMatrix mean = dynamics::averaged_pulse(noise, u0, t);
  const double expected = 1.0 - std::exp(-0.5 * gamma * t);
  CHECK(std::abs(operator_norm(ComplexMatrix(u0 - mean)) - expected) <= 1e-12);

  // Sampling oracle for the SDE mean: e^{-i sqrt(gamma) B W_t} u0 averaged
  // over 10^4 draws matches entrywise within 3/sqrt(10^4).
  const int n_draws = 10000;
  ComplexMatrix sampled = ComplexMatrix::Zero(4, 4);
  stochastic::RngStream stream(912, 0);
  const auto eig_b = linalg::hermitian_eig(b);
  for (int k = 0; k < n_draws; ++k) {
    const double w = stochastic::sample_terminal(stream, t);
    ComplexVector phases(4);
    for (int j = 0; j < 4; ++j) {
      phases[j] = std::exp(Complex(0.0, -std::sqrt(gamma) * eig_b.eigenvalues[j].real() * w));
    }
    sampled += eig_b.eigenvectors * phases.asDiagonal() * eig_b.eigenvectors.adjoint() * u0;
  }
  sampled /= static_cast<double>(n_draws);
  CHECK((sampled - mean).cwiseAbs().maxCoeff() <= 3.0 / std::sqrt(n_draws));
}

TEST_CASE("finite-pulse ensemble matches the averaged master equation at large N") {
  // B = sz x sz commutes with the limit Hamiltonian, where the shared-noise
  // product and the limit SDE have the same law; at moderate gamma t the
  // mean-fidelity vs fidelity-of-mean gap sits well inside Monte Carlo error.
  const auto scenario = scenarios::two_qubit(1.0, 0.1, scenarios::InitialState::Superposition);
  const auto sch = z1_scheme();
  const auto noise = dynamics::make_noise(
      ops::tensor({ops::pauli(Pauli::Z), ops::pauli(Pauli::Z)}), 0.125);  // gamma t = 0.25
  const double t = 2.0;
  const int n_pulses = 1024;
  const long trials = 1000;

  const ComplexVector reference = dynamics::ideal_reference(scenario, t);
  std::vector<double> fidelities(trials);
  for (long i = 0; i < trials; ++i) {
    stochastic::RngStream stream(913, static_cast<std::uint64_t>(i));
    const double w = stochastic::sample_terminal(stream, t);
    const ComplexMatrix rho =
        dynamics::propagate_finite_pulses(scenario, sch, noise, t, n_pulses, w);
    fidelities[static_cast<std::size_t>(i)] =
        metrics::fidelity(reference, dynamics::protected_state(scenario, rho));
  }
  const auto stats = metrics::ensemble_stats(fidelities);

  const auto limits = scheme::scheme_limit(sch, scenario.hamiltonian, noise.error_operator);
  const auto analytic =
      dynamics::averaged_lindblad(limits.effective_hamiltonian, limits.effective_error,
                                  noise.gamma, scenario.initial_state, t, 4);
  const double f_analytic =
      metrics::fidelity(reference, dynamics::protected_state(scenario, analytic.states.back()));
  CHECK(std::abs(stats.mean - f_analytic) <=
        3.0 * stats.std_dev / std::sqrt(static_cast<double>(trials)));
}
