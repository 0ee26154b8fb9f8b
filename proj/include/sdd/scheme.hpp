#pragma once

#include <vector>

#include "sdd/types.hpp"

namespace sdd::scheme {

// Ordered cycle of instantaneous unitary pulses u_1..u_M, stored in
// application order (u_1 acts first). The cycle unitary is the ordered
// product U = u_M ... u_1.
struct DecouplingScheme {
  std::vector<ComplexMatrix> pulses;
  ComplexMatrix cycle_unitary;
  bool cycle_is_identity = false;

  int cycle_length() const { return static_cast<int>(pulses.size()); }
  int dim() const { return static_cast<int>(cycle_unitary.rows()); }
};

// Validates pulse unitarity and computes the cycle unitary.
DecouplingScheme make_scheme(std::vector<ComplexMatrix> pulses);

// Partial products g_0 = 1, g_n = u_n ... u_1 for n = 1..M.
std::vector<ComplexMatrix> partial_products(const DecouplingScheme& scheme);

// Exact finite Cesaro mean (1/N) sum_{k=0}^{N-1} U^k X U^{-k}, evaluated by
// binary splitting of the sum; no spectral information is used, which keeps
// this independent of ergodic_projector as a cross-check.
ComplexMatrix cesaro_oracle(const ComplexMatrix& u, const ComplexMatrix& x, long n_terms);

// Projection of X onto the commutant of U: cluster the unit-circle spectrum
// of U by eigenphase gaps and return sum_g Pi_g X Pi_g over the cluster
// projectors. Gaps falling inside (cluster_tol, 10*cluster_tol) signal
// unstable clustering and raise ClusterAmbiguity.
ComplexMatrix ergodic_projector(const ComplexMatrix& u, const ComplexMatrix& x,
                                double cluster_tol = tol::cluster_default);

// Continuous-control limit operators of a repeated cycle.
struct SchemeLimits {
  ComplexMatrix effective_hamiltonian;
  ComplexMatrix effective_error;
};

// H_eff = P((1/M) sum_{j=0}^{M-1} g_j H g_j^dag) and likewise for B. When
// the cycle unitary is the identity the projector is the identity map and
// the cycle average alone is the limit.
SchemeLimits scheme_limit(const DecouplingScheme& scheme, const ComplexMatrix& h,
                          const ComplexMatrix& b, double cluster_tol = tol::cluster_default);

// Finite-N generator terms of the noisy product evolution, evaluated at
// tau -> 0 over the supplied conjugators g_0..g_{N-1}:
//   H_N = (1/N) sum g_k H g_k^dag,   B_N likewise,
//   C_N = (1/N^2) sum g_k B^2 g_k^dag
//       + (2/N^2) sum_{j<k} (g_j B g_j^dag)(g_k B g_k^dag).
struct GeneratorTerms {
  ComplexMatrix h_n;
  ComplexMatrix b_n;
  ComplexMatrix c_n;
};

GeneratorTerms finite_generator_terms(const std::vector<ComplexMatrix>& products,
                                      const ComplexMatrix& h, const ComplexMatrix& b);

// First N conjugators of the repeated cycle, g_k = g_{k mod M} from the
// scheme's partial products.
std::vector<ComplexMatrix> repeated_products(const DecouplingScheme& scheme, int n_pulses);

}  // namespace sdd::scheme
