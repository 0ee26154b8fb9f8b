#include "sdd/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/QR>

#include "sdd/linalg.hpp"

namespace sdd::scheme {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

}  // namespace

DecouplingScheme make_scheme(std::vector<ComplexMatrix> pulses) {
  if (pulses.empty()) throw EmptyList("make_scheme: need at least one pulse");
  const Eigen::Index dim = pulses.front().rows();
  for (const auto& u : pulses) {
    if (u.rows() != dim || u.cols() != dim) {
      throw DimensionMismatch("make_scheme: pulses must share one dimension");
    }
    if (!linalg::is_unitary(u)) throw NotUnitary("make_scheme: pulse is not unitary");
  }
  DecouplingScheme scheme;
  scheme.cycle_unitary = ComplexMatrix::Identity(dim, dim);
  for (const auto& u : pulses) scheme.cycle_unitary = u * scheme.cycle_unitary;
  scheme.pulses = std::move(pulses);
  const ComplexMatrix eye = ComplexMatrix::Identity(dim, dim);
  scheme.cycle_is_identity =
      linalg::operator_norm(ComplexMatrix(scheme.cycle_unitary - eye)) <= tol::cycle_identity;
  return scheme;
}

std::vector<ComplexMatrix> partial_products(const DecouplingScheme& scheme) {
  std::vector<ComplexMatrix> products;
  products.reserve(scheme.pulses.size() + 1);
  products.push_back(ComplexMatrix::Identity(scheme.dim(), scheme.dim()));
  for (const auto& u : scheme.pulses) products.push_back(u * products.back());
  return products;
}

std::vector<ComplexMatrix> repeated_products(const DecouplingScheme& scheme, int n_pulses) {
  if (n_pulses < 1) throw Error("repeated_products: need at least one pulse");
  const auto cycle = partial_products(scheme);
  const int m = scheme.cycle_length();
  // g_{lM+j} = g_j U^l: every completed cycle contributes one factor of the
  // cycle unitary (which drops out only when the cycle closes to identity).
  ComplexMatrix cycle_power = ComplexMatrix::Identity(scheme.dim(), scheme.dim());
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(n_pulses));
  for (int k = 0; k < n_pulses; ++k) {
    if (k > 0 && k % m == 0) cycle_power = (scheme.cycle_unitary * cycle_power).eval();
    if (scheme.cycle_is_identity) {
      out.push_back(cycle[static_cast<std::size_t>(k % m)]);
    } else {
      out.push_back(cycle[static_cast<std::size_t>(k % m)] * cycle_power);
    }
  }
  return out;
}

ComplexMatrix cesaro_oracle(const ComplexMatrix& u, const ComplexMatrix& x, long n_terms) {
  if (n_terms < 1) throw Error("cesaro_oracle: need at least one term");
  if (u.rows() != x.rows() || u.cols() != x.cols() || u.rows() != u.cols()) {
    throw DimensionMismatch("cesaro_oracle: dimension mismatch");
  }
  // Binary splitting of S_N = sum_{k=0}^{N-1} U^k X U^{-k}:
  //   S_{2m} = S_m + U^m S_m U^{-m},  S_{2m+1} = X + U S_{2m} U^{-1}.
  ComplexMatrix total = x;       // S_m for the bits consumed so far
  ComplexMatrix power = u;       // U^m
  std::vector<bool> bits;
  for (long v = n_terms; v > 1; v >>= 1) bits.push_back(v & 1);
  for (auto it = bits.rbegin(); it != bits.rend(); ++it) {
    total = total + power * total * power.adjoint();
    power = (power * power).eval();
    if (*it) {
      total = x + u * total * u.adjoint();
      power = (power * u).eval();
    }
  }
  return total / static_cast<double>(n_terms);
}

ComplexMatrix ergodic_projector(const ComplexMatrix& u, const ComplexMatrix& x,
                                double cluster_tol) {
  if (u.rows() != x.rows() || u.cols() != x.cols()) {
    throw DimensionMismatch("ergodic_projector: dimension mismatch");
  }
  const auto eig = linalg::unitary_eig(u);
  const Eigen::Index dim = u.rows();

  // Sort eigenphases; clusters are maximal runs with adjacent gap <= tol.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> phase(static_cast<std::size_t>(dim));
  for (Eigen::Index k = 0; k < dim; ++k) {
    phase[static_cast<std::size_t>(k)] = std::arg(eig.eigenvalues[k]);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) {
                     return phase[static_cast<std::size_t>(i)] < phase[static_cast<std::size_t>(j)];
                   });

  auto classify_gap = [&](double gap) {
    if (gap <= cluster_tol) return 0;                // same cluster
    if (gap >= 10.0 * cluster_tol) return 1;         // clean boundary
    throw ClusterAmbiguity("ergodic_projector: eigenphase gap inside guard band");
  };

  std::vector<std::vector<Eigen::Index>> clusters;
  clusters.push_back({order.front()});
  for (std::size_t k = 1; k < order.size(); ++k) {
    const double gap = phase[static_cast<std::size_t>(order[k])] -
                       phase[static_cast<std::size_t>(order[k - 1])];
    if (classify_gap(gap) == 0) {
      clusters.back().push_back(order[k]);
    } else {
      clusters.push_back({order[k]});
    }
  }
  // Phases live on a circle: merge the first and last clusters when the
  // wrap-around gap closes.
  if (clusters.size() > 1) {
    const double wrap_gap = phase[static_cast<std::size_t>(order.front())] + kTwoPi -
                            phase[static_cast<std::size_t>(order.back())];
    if (classify_gap(wrap_gap) == 0) {
      auto& first = clusters.front();
      first.insert(first.end(), clusters.back().begin(), clusters.back().end());
      clusters.pop_back();
    }
  }

  ComplexMatrix projected = ComplexMatrix::Zero(dim, dim);
  for (const auto& members : clusters) {
    ComplexMatrix basis(dim, static_cast<Eigen::Index>(members.size()));
    for (std::size_t c = 0; c < members.size(); ++c) {
      basis.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors.col(members[c]);
    }
    // Re-orthonormalize inside the cluster; eigenvector routines can lose
    // orthogonality between nearly degenerate columns.
    Eigen::HouseholderQR<ComplexMatrix> qr(basis);
    ComplexMatrix q = qr.householderQ() *
                      ComplexMatrix::Identity(dim, static_cast<Eigen::Index>(members.size()));
    const ComplexMatrix pi = q * q.adjoint();
    projected += pi * x * pi;
  }
  return projected;
}

SchemeLimits scheme_limit(const DecouplingScheme& scheme, const ComplexMatrix& h,
                          const ComplexMatrix& b, double cluster_tol) {
  if (h.rows() != scheme.dim() || b.rows() != scheme.dim()) {
    throw DimensionMismatch("scheme_limit: operator dimension does not match scheme");
  }
  if (!linalg::is_hermitian(h)) throw NotHermitian("scheme_limit: H is not Hermitian");
  if (!linalg::is_hermitian(b)) throw NotHermitian("scheme_limit: B is not Hermitian");

  const auto products = partial_products(scheme);
  const int m = scheme.cycle_length();
  ComplexMatrix h_avg = ComplexMatrix::Zero(scheme.dim(), scheme.dim());
  ComplexMatrix b_avg = h_avg;
  for (int j = 0; j < m; ++j) {
    const auto& g = products[static_cast<std::size_t>(j)];
    h_avg += g * h * g.adjoint();
    b_avg += g * b * g.adjoint();
  }
  h_avg /= static_cast<double>(m);
  b_avg /= static_cast<double>(m);

  SchemeLimits limits;
  if (scheme.cycle_is_identity) {
    limits.effective_hamiltonian = std::move(h_avg);
    limits.effective_error = std::move(b_avg);
  } else {
    limits.effective_hamiltonian = ergodic_projector(scheme.cycle_unitary, h_avg, cluster_tol);
    limits.effective_error = ergodic_projector(scheme.cycle_unitary, b_avg, cluster_tol);
  }
  return limits;
}

GeneratorTerms finite_generator_terms(const std::vector<ComplexMatrix>& products,
                                      const ComplexMatrix& h, const ComplexMatrix& b) {
  if (products.empty()) throw EmptyList("finite_generator_terms: empty product list");
  const Eigen::Index dim = h.rows();
  const double n = static_cast<double>(products.size());

  GeneratorTerms terms;
  terms.h_n = ComplexMatrix::Zero(dim, dim);
  terms.b_n = ComplexMatrix::Zero(dim, dim);
  terms.c_n = ComplexMatrix::Zero(dim, dim);

  std::vector<ComplexMatrix> conjugated_b;
  conjugated_b.reserve(products.size());
  for (const auto& g : products) {
    terms.h_n += g * h * g.adjoint();
    conjugated_b.push_back(g * b * g.adjoint());
    terms.b_n += conjugated_b.back();
  }
  terms.h_n /= n;
  terms.b_n /= n;

  // C_N: squares plus twice the ordered j < k cross terms. Accumulate the
  // suffix sum so the double sum costs O(N) products.
  ComplexMatrix suffix = ComplexMatrix::Zero(dim, dim);
  for (std::size_t k = products.size(); k-- > 0;) {
    const ComplexMatrix& bk = conjugated_b[k];
    terms.c_n += bk * bk + 2.0 * (bk * suffix);
    suffix += bk;
  }
  terms.c_n /= n * n;
  return terms;
}

}  // namespace sdd::scheme
