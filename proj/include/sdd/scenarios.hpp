#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sdd/dynamics.hpp"
#include "sdd/operators.hpp"
#include "sdd/scheme.hpp"

namespace sdd::scenarios {

enum class InitialState { Eigenstate, Superposition };

// Two coupled qubits,
//   H = (w/2)(sz x 1) + (w/2)(1 x sz) + g (sx x sx),
// with the protected qubit starting in |0> or (|0>+|1>)/sqrt(2) and qubit 2
// maximally mixed. The ideal reference evolves under (w/2) sz alone.
dynamics::Scenario two_qubit(double omega, double coupling, InitialState initial);

enum class BathZeeman {
  Uniform,       // every site splits at omega
  ElectronOnly,  // nuclear splittings neglected (central-spin convention)
};

struct SpinBathParams {
  int bath_size = 5;
  double omega = 1.0;
  BathZeeman zeeman = BathZeeman::Uniform;
  InitialState initial = InitialState::Eigenstate;
  // Empty: hyperfine profile A_k = omega * exp(-(k/5)^(1/3)); otherwise the
  // explicit K coupling constants.
  std::vector<double> couplings;
};

// Central electron spin coupled to K nuclear spins through the isotropic
// hyperfine interaction; the bath starts maximally mixed.
dynamics::Scenario spin_bath(const SpinBathParams& params);

struct OscillatorParams {
  double omega_a = 1.0;
  double omega_b = 1.0;
  double coupling = 0.1;
  int truncation_a = 10;
  int truncation_b = 10;
  // Oscillator A starts in a normalized truncated coherent state |alpha>
  // unless fock_level is set; oscillator B starts in its ground state.
  double coherent_alpha = 1.0;
  std::optional<int> fock_level;
};

// Two coupled oscillators on truncated Fock spaces,
//   H = w_a a^dag a + w_b b^dag b + g (a^dag + a)(b^dag + b).
dynamics::Scenario coupled_oscillators(const OscillatorParams& params);

// Pulse construction helpers shared by the CLI and tests. Tokens follow the
// config grammar: X1, Y2, Z1, or P1(3.14159) for a phase pulse e^{i phi n}.
ComplexMatrix named_pulse(const std::string& token, const std::vector<int>& site_dims);
scheme::DecouplingScheme scheme_from_tokens(const std::vector<std::string>& tokens,
                                            const std::vector<int>& site_dims);

// Product error operator from per-site Pauli coefficients (qubit sites).
ComplexMatrix product_error_operator(const std::vector<ops::PauliCoefficients>& site_coeffs);

// Oscillator error operator c_n (a^dag a) + c_q (a^dag + a) on subsystem A.
ComplexMatrix oscillator_error_operator(const OscillatorParams& params, double number_coeff,
                                        double linear_coeff);

}  // namespace sdd::scenarios
