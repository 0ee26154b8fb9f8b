#include "sdd/scenarios.hpp"

#include <cmath>
#include <sstream>

#include "sdd/linalg.hpp"

namespace sdd::scenarios {

namespace {

ComplexVector qubit_initial(InitialState initial) {
  ComplexVector psi(2);
  if (initial == InitialState::Eigenstate) {
    psi << 1.0, 0.0;
  } else {
    psi << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  }
  return psi;
}

ComplexMatrix maximally_mixed(int dim) {
  return ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
}

}  // namespace

dynamics::Scenario two_qubit(double omega, double coupling, InitialState initial) {
  using ops::Pauli;
  const std::vector<int> dims{2, 2};
  const ComplexMatrix sz = ops::pauli(Pauli::Z);
  const ComplexMatrix sx = ops::pauli(Pauli::X);

  dynamics::Scenario scenario;
  scenario.site_dims = dims;
  scenario.protected_sites = {0};
  scenario.hamiltonian = 0.5 * omega * (ops::embed(sz, 0, dims) + ops::embed(sz, 1, dims)) +
                         coupling * ops::embed(sx, 0, dims) * ops::embed(sx, 1, dims);
  const ComplexVector psi = qubit_initial(initial);
  scenario.initial_state =
      ops::tensor({ComplexMatrix(psi * psi.adjoint()), maximally_mixed(2)});
  scenario.ideal_generator = 0.5 * omega * sz;
  scenario.reference_state = psi;
  scenario.label = "two_qubit";
  dynamics::validate_scenario(scenario);
  return scenario;
}

dynamics::Scenario spin_bath(const SpinBathParams& params) {
  const int k = params.bath_size;
  if (k < 1) throw DimensionMismatch("spin_bath: need at least one bath spin");
  std::vector<double> omegas(static_cast<std::size_t>(k + 1), params.omega);
  if (params.zeeman == BathZeeman::ElectronOnly) {
    for (std::size_t s = 1; s < omegas.size(); ++s) omegas[s] = 0.0;
  }
  std::vector<double> couplings = params.couplings;
  if (couplings.empty()) {
    couplings.resize(static_cast<std::size_t>(k));
    for (int j = 1; j <= k; ++j) {
      couplings[static_cast<std::size_t>(j - 1)] =
          params.omega * std::exp(-std::cbrt(static_cast<double>(j) / 5.0));
    }
  } else if (static_cast<int>(couplings.size()) != k) {
    throw DimensionMismatch("spin_bath: coupling list must have K entries");
  }

  dynamics::Scenario scenario;
  scenario.site_dims.assign(static_cast<std::size_t>(k + 1), 2);
  scenario.protected_sites = {0};
  scenario.hamiltonian = ops::spin_bath_hamiltonian(k, omegas, couplings);
  const ComplexVector psi = qubit_initial(params.initial);
  scenario.initial_state = ops::tensor(
      {ComplexMatrix(psi * psi.adjoint()), maximally_mixed(1 << k)});
  scenario.ideal_generator = 0.5 * params.omega * ops::pauli(ops::Pauli::Z);
  scenario.reference_state = psi;
  scenario.label = "spin_bath";
  dynamics::validate_scenario(scenario);
  return scenario;
}

dynamics::Scenario coupled_oscillators(const OscillatorParams& params) {
  const ops::BosonicSpace space_a{params.truncation_a};
  const ops::BosonicSpace space_b{params.truncation_b};
  const auto [a, a_dag] = ops::boson_ladder(space_a);
  const auto [b, b_dag] = ops::boson_ladder(space_b);
  const std::vector<int> dims{params.truncation_a, params.truncation_b};

  dynamics::Scenario scenario;
  scenario.site_dims = dims;
  scenario.protected_sites = {0};
  scenario.hamiltonian =
      params.omega_a * ops::embed(ComplexMatrix(a_dag * a), 0, dims) +
      params.omega_b * ops::embed(ComplexMatrix(b_dag * b), 1, dims) +
      params.coupling * ops::embed(ComplexMatrix(a_dag + a), 0, dims) *
          ops::embed(ComplexMatrix(b_dag + b), 1, dims);

  ComplexVector psi_a = ComplexVector::Zero(params.truncation_a);
  if (params.fock_level) {
    const int n = *params.fock_level;
    if (n < 0 || n >= params.truncation_a) {
      throw DimensionMismatch("coupled_oscillators: Fock level outside truncation");
    }
    psi_a[n] = 1.0;
  } else {
    double log_fact = 0.0;
    for (int n = 0; n < params.truncation_a; ++n) {
      if (n > 0) log_fact += std::log(static_cast<double>(n));
      psi_a[n] = std::pow(params.coherent_alpha, n) * std::exp(-0.5 * log_fact);
    }
    psi_a *= std::exp(-0.5 * params.coherent_alpha * params.coherent_alpha);
    psi_a /= psi_a.norm();  // renormalize after truncation
  }
  ComplexVector psi_b = ComplexVector::Zero(params.truncation_b);
  psi_b[0] = 1.0;

  scenario.initial_state = ops::tensor({ComplexMatrix(psi_a * psi_a.adjoint()),
                                        ComplexMatrix(psi_b * psi_b.adjoint())});
  scenario.ideal_generator = params.omega_a * (a_dag * a);
  scenario.reference_state = psi_a;
  scenario.label = "oscillator";
  dynamics::validate_scenario(scenario);
  return scenario;
}

ComplexMatrix named_pulse(const std::string& token, const std::vector<int>& site_dims) {
  if (token.size() < 2) throw ConfigError("pulse token too short: '" + token + "'");
  const char kind = token[0];
  if (kind == 'X' || kind == 'Y' || kind == 'Z') {
    int site = 0;
    try {
      site = std::stoi(token.substr(1));
    } catch (const std::exception&) {
      throw ConfigError("bad site index in pulse token '" + token + "'");
    }
    if (site < 1 || site > static_cast<int>(site_dims.size())) {
      throw ConfigError("pulse site out of range in token '" + token + "'");
    }
    if (site_dims[static_cast<std::size_t>(site - 1)] != 2) {
      throw ConfigError("Pauli pulse on a non-qubit site in token '" + token + "'");
    }
    const ops::Pauli axis =
        kind == 'X' ? ops::Pauli::X : (kind == 'Y' ? ops::Pauli::Y : ops::Pauli::Z);
    return ops::embed(ops::pauli(axis), site - 1, site_dims);
  }
  if (kind == 'P') {
    const auto open = token.find('(');
    const auto close = token.find(')');
    if (open == std::string::npos || close == std::string::npos || close < open) {
      throw ConfigError("phase pulse token needs P<site>(<phi>): '" + token + "'");
    }
    int site = 0;
    try {
      site = std::stoi(token.substr(1, open - 1));
    } catch (const std::exception&) {
      throw ConfigError("bad site index in pulse token '" + token + "'");
    }
    if (site < 1 || site > static_cast<int>(site_dims.size())) {
      throw ConfigError("pulse site out of range in token '" + token + "'");
    }
    const std::string arg = token.substr(open + 1, close - open - 1);
    double phi = 0.0;
    if (arg == "pi") {
      phi = M_PI;
    } else {
      try {
        phi = std::stod(arg);
      } catch (const std::exception&) {
        throw ConfigError("bad phase in pulse token '" + token + "'");
      }
    }
    const ops::BosonicSpace space{site_dims[static_cast<std::size_t>(site - 1)]};
    return ops::embed(ops::parity_phase_pulse(space, phi), site - 1, site_dims);
  }
  throw ConfigError("unknown pulse token '" + token + "'");
}

scheme::DecouplingScheme scheme_from_tokens(const std::vector<std::string>& tokens,
                                            const std::vector<int>& site_dims) {
  if (tokens.empty()) throw ConfigError("scheme: pulse list is empty");
  std::vector<ComplexMatrix> pulses;
  pulses.reserve(tokens.size());
  for (const auto& token : tokens) pulses.push_back(named_pulse(token, site_dims));
  return scheme::make_scheme(std::move(pulses));
}

ComplexMatrix product_error_operator(const std::vector<ops::PauliCoefficients>& site_coeffs) {
  if (site_coeffs.empty()) throw EmptyList("product_error_operator: no site factors");
  std::vector<ComplexMatrix> factors;
  factors.reserve(site_coeffs.size());
  for (const auto& c : site_coeffs) factors.push_back(ops::site_operator(c));
  return ops::tensor(factors);
}

ComplexMatrix oscillator_error_operator(const OscillatorParams& params, double number_coeff,
                                        double linear_coeff) {
  const auto [a, a_dag] = ops::boson_ladder(ops::BosonicSpace{params.truncation_a});
  const std::vector<int> dims{params.truncation_a, params.truncation_b};
  return ops::embed(
      ComplexMatrix(number_coeff * (a_dag * a) + linear_coeff * (a_dag + a)), 0, dims);
}

}  // namespace sdd::scenarios
