#include "sdd/dynamics.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "sdd/linalg.hpp"
#include "sdd/operators.hpp"

namespace sdd::dynamics {

namespace {

// V diag(e^{-i phase_scale * lambda_k}) V^dag from a precomputed spectrum.
ComplexMatrix phase_exponential(const linalg::EigenDecomposition& eig, double phase_scale) {
  ComplexVector phases(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases[k] = std::exp(Complex(0.0, -phase_scale * eig.eigenvalues[k].real()));
  }
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix unitary_power(ComplexMatrix base, long exponent) {
  ComplexMatrix result = ComplexMatrix::Identity(base.rows(), base.cols());
  while (exponent > 0) {
    if (exponent & 1) result = (base * result).eval();
    base = (base * base).eval();
    exponent >>= 1;
  }
  return result;
}

}  // namespace

NoiseModel make_noise(ComplexMatrix error_operator, double gamma) {
  if (!linalg::is_hermitian(error_operator)) {
    throw NotHermitian("make_noise: error operator must be Hermitian");
  }
  if (!(gamma >= 0.0)) throw Error("make_noise: gamma must be >= 0");
  return {std::move(error_operator), gamma};
}

void validate_scenario(const Scenario& scenario) {
  const auto& rho = scenario.initial_state;
  if (rho.rows() != rho.cols() || rho.rows() != scenario.hamiltonian.rows()) {
    throw DimensionMismatch("scenario: state and Hamiltonian dimensions differ");
  }
  long long total = 1;
  for (int d : scenario.site_dims) total *= d;
  if (total != rho.rows()) {
    throw DimensionMismatch("scenario: site dimensions do not multiply to dim(rho)");
  }
  if (!linalg::is_hermitian(scenario.hamiltonian)) {
    throw NotHermitian("scenario: Hamiltonian must be Hermitian");
  }
  if (std::abs(rho.trace().real() - 1.0) > tol::trace_one ||
      std::abs(rho.trace().imag()) > tol::trace_one) {
    throw InvalidState("scenario: initial state must have trace 1");
  }
  const auto eig = linalg::hermitian_eig(rho);
  if (eig.eigenvalues[0].real() < tol::positivity_floor) {
    throw InvalidState("scenario: initial state is not positive semidefinite");
  }
}

ComplexMatrix protected_state(const Scenario& scenario, const ComplexMatrix& rho) {
  return ops::partial_trace(rho, scenario.site_dims, scenario.protected_sites);
}

ComplexMatrix propagate_finite_pulses(const Scenario& scenario,
                                      const scheme::DecouplingScheme& pulse_scheme,
                                      const NoiseModel& noise, double t, int n_pulses,
                                      double w_t) {
  const int cycle = pulse_scheme.cycle_length();
  if (n_pulses < 1 || n_pulses % cycle != 0) {
    throw NotCycleMultiple("propagate_finite_pulses: N must be a positive cycle multiple");
  }
  if (pulse_scheme.dim() != scenario.hamiltonian.rows()) {
    throw DimensionMismatch("propagate_finite_pulses: scheme dimension mismatch");
  }
  const double tau = t / static_cast<double>(n_pulses);
  const ComplexMatrix free_step = linalg::expm_hermitian_generator(scenario.hamiltonian, tau);

  ComplexMatrix noise_factor;
  if (noise.gamma > 0.0 && w_t != 0.0) {
    const auto eig_b = linalg::hermitian_eig(noise.error_operator);
    noise_factor = phase_exponential(
        eig_b, std::sqrt(noise.gamma) * stochastic::shared_pulse_value(w_t, n_pulses));
  } else {
    noise_factor = ComplexMatrix::Identity(pulse_scheme.dim(), pulse_scheme.dim());
  }

  // One cycle of slots (free evolution first, then the noisy pulse), then
  // the cycle product raised to the number of repetitions.
  ComplexMatrix cycle_step = ComplexMatrix::Identity(pulse_scheme.dim(), pulse_scheme.dim());
  for (int k = 0; k < cycle; ++k) {
    cycle_step =
        (noise_factor * pulse_scheme.pulses[static_cast<std::size_t>(k)] * free_step * cycle_step)
            .eval();
  }
  const ComplexMatrix u_n = unitary_power(cycle_step, n_pulses / cycle);
  return u_n * scenario.initial_state * u_n.adjoint();
}

TrajectoryResult continuous_trajectory(const ComplexMatrix& h_eff, const ComplexMatrix& b_eff,
                                       double gamma, const ComplexMatrix& rho0,
                                       const stochastic::WienerPath& path, int record_stride) {
  if (record_stride < 1) throw Error("continuous_trajectory: record stride must be >= 1");
  const int steps = path.n_steps();
  const double dt = path.t_final / static_cast<double>(steps);
  const auto eig_h = linalg::hermitian_eig(h_eff);
  const auto eig_b = linalg::hermitian_eig(b_eff);
  const ComplexMatrix free_step = phase_exponential(eig_h, dt);
  const double noise_scale = std::sqrt(gamma);

  TrajectoryResult result;
  result.times.push_back(0.0);
  result.states.push_back(rho0);
  result.wiener_terminals.push_back(path.terminal);

  ComplexMatrix rho = rho0;
  for (int k = 0; k < steps; ++k) {
    ComplexMatrix step = free_step;
    const double dw = path.increments[static_cast<std::size_t>(k)];
    if (gamma > 0.0 && dw != 0.0) {
      step = free_step * phase_exponential(eig_b, noise_scale * dw);
    }
    rho = step * rho * step.adjoint();
    if ((k + 1) % record_stride == 0 || k + 1 == steps) {
      result.times.push_back(dt * static_cast<double>(k + 1));
      result.states.push_back(rho);
    }
  }
  return result;
}

ComplexVector vectorize(const ComplexMatrix& m) {
  const Eigen::Index dim = m.rows();
  ComplexVector v(dim * dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) v[i * dim + j] = m(i, j);
  }
  return v;
}

ComplexMatrix unvectorize(const ComplexVector& v, Eigen::Index dim) {
  ComplexMatrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = v[i * dim + j];
  }
  return m;
}

ComplexMatrix lindblad_superoperator(const ComplexMatrix& h_eff, const ComplexMatrix& b_eff,
                                     double gamma) {
  const Eigen::Index dim = h_eff.rows();
  const ComplexMatrix eye = ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix b_sq = b_eff * b_eff;
  const Complex minus_i(0.0, -1.0);
  // Row-major vectorization: A rho -> (A x 1) v, rho A -> (1 x A^T) v.
  ComplexMatrix lind =
      minus_i * (Eigen::kroneckerProduct(h_eff, eye).eval() -
                 Eigen::kroneckerProduct(eye, h_eff.transpose()).eval());
  if (gamma > 0.0) {
    lind -= 0.5 * gamma *
            (Eigen::kroneckerProduct(b_sq, eye).eval() +
             Eigen::kroneckerProduct(eye, b_sq.transpose()).eval() -
             2.0 * Eigen::kroneckerProduct(b_eff, b_eff.transpose()).eval());
  }
  return lind;
}

TrajectoryResult averaged_lindblad(const ComplexMatrix& h_eff, const ComplexMatrix& b_eff,
                                   double gamma, const ComplexMatrix& rho0, double t,
                                   int steps) {
  const Eigen::Index dim = rho0.rows();
  if (dim > 16) {
    throw DimensionTooLarge("averaged_lindblad: superoperator route capped at dim 16");
  }
  if (steps < 1) throw Error("averaged_lindblad: need at least one step");
  if (!linalg::is_hermitian(h_eff)) throw NotHermitian("averaged_lindblad: H not Hermitian");
  if (!linalg::is_hermitian(b_eff)) throw NotHermitian("averaged_lindblad: B not Hermitian");

  const double dt = t / static_cast<double>(steps);
  const ComplexMatrix lind = lindblad_superoperator(h_eff, b_eff, gamma);
  // One exponential per (H, B, gamma, dt); the whole time series reuses it.
  const ComplexMatrix step = linalg::expm_general(ComplexMatrix(lind * dt));

  TrajectoryResult result;
  result.times.push_back(0.0);
  result.states.push_back(rho0);
  ComplexVector v = vectorize(rho0);
  for (int k = 1; k <= steps; ++k) {
    v = step * v;
    result.times.push_back(dt * static_cast<double>(k));
    result.states.push_back(unvectorize(v, dim));
  }
  return result;
}

ComplexMatrix phase_damped_solution(const ComplexMatrix& rho0, double omega_a, double gamma,
                                    double t) {
  const Eigen::Index dim = rho0.rows();
  ComplexMatrix rho(dim, dim);
  for (Eigen::Index n = 0; n < dim; ++n) {
    for (Eigen::Index m = 0; m < dim; ++m) {
      const double k = static_cast<double>(n - m);
      rho(n, m) = std::exp(Complex(0.0, -omega_a * k * t)) *
                  std::exp(-0.5 * k * k * gamma * t) * rho0(n, m);
    }
  }
  return rho;
}

ComplexVector ideal_reference(const Scenario& scenario, double t) {
  const ComplexMatrix evolution = linalg::expm_hermitian_generator(scenario.ideal_generator, t);
  return evolution * scenario.reference_state;
}

ComplexMatrix averaged_pulse(const NoiseModel& noise, const ComplexMatrix& u0, double t) {
  if (!linalg::is_unitary(u0)) throw NotUnitary("averaged_pulse: u0 must be unitary");
  if (!(t >= 0.0)) throw NegativeTime("averaged_pulse: time must be >= 0");
  const auto eig_b = linalg::hermitian_eig(noise.error_operator);
  ComplexVector decay(eig_b.eigenvalues.size());
  for (Eigen::Index k = 0; k < decay.size(); ++k) {
    const double lambda = eig_b.eigenvalues[k].real();
    decay[k] = std::exp(-0.5 * noise.gamma * lambda * lambda * t);
  }
  return eig_b.eigenvectors * decay.asDiagonal() * eig_b.eigenvectors.adjoint() * u0;
}

}  // namespace dynamics
