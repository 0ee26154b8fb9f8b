#pragma once

#include <vector>

#include "sdd/types.hpp"

namespace sdd::ops {

// Basis convention used throughout: per-site order (|0>, |1>) with site 1 as
// the leftmost tensor factor, and sigma_z = |1><1| - |0><0|, i.e. |0> is the
// -1 eigenstate. All model formulas port verbatim under this convention.
enum class Pauli { I, X, Y, Z };

ComplexMatrix pauli(Pauli axis);

struct PauliCoefficients {
  double c0 = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  double cz = 0.0;
};

// c0*1 + cx*sigma_x + cy*sigma_y + cz*sigma_z (Hermitian).
ComplexMatrix site_operator(const PauliCoefficients& coeffs);

struct QubitRegister {
  int n_sites = 1;
  std::vector<int> dims;  // per-site dimensions, all 2 for qubits

  static QubitRegister qubits(int n);
  int total_dim() const;
};

// Kronecker product in site order (first element = leftmost factor).
ComplexMatrix tensor(const std::vector<ComplexMatrix>& factors);

// Operator acting as `op` on `site` (0-based) of a register with the given
// per-site dimensions, identity elsewhere.
ComplexMatrix embed(const ComplexMatrix& op, int site, const std::vector<int>& dims);

// Central spin coupled to K nuclear spins:
//   H = sum_k A_k (sx1 sxk + sy1 syk + sz1 szk) + sum_k (hbar w_k / 2) szk
// omegas has K+1 entries (site 1 first), couplings has K entries. hbar = 1.
ComplexMatrix spin_bath_hamiltonian(int bath_size, const std::vector<double>& omegas,
                                    const std::vector<double>& couplings);

struct BosonicSpace {
  int truncation_dim = 2;  // D >= 2
};

struct LadderPair {
  ComplexMatrix a;
  ComplexMatrix a_dagger;
};

// Truncated annihilation/creation operators, a|n> = sqrt(n)|n-1>.
LadderPair boson_ladder(const BosonicSpace& space);

// diag(e^{i phi n}) for n = 0..D-1, phi in (0, pi].
ComplexMatrix parity_phase_pulse(const BosonicSpace& space, double phi);

// Reduced operator on the kept sites (0-based indices, ascending output
// order); trace is preserved.
ComplexMatrix partial_trace(const ComplexMatrix& rho, const std::vector<int>& dims,
                            const std::vector<int>& keep);

// Largest diagonal population among the top `levels` basis states of the
// bosonic site; used to monitor Fock-truncation leakage.
double top_level_population(const ComplexMatrix& rho, const std::vector<int>& dims,
                            int site, int levels = 2);

}  // namespace sdd::ops
