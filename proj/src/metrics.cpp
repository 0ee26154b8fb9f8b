#include "sdd/metrics.hpp"

#include <cmath>

#include "sdd/linalg.hpp"

namespace sdd::metrics {

double fidelity(const ComplexVector& psi, const ComplexMatrix& rho) {
  if (psi.size() != rho.rows() || rho.rows() != rho.cols()) {
    throw DimensionMismatch("fidelity: state dimensions differ");
  }
  const Complex overlap = psi.adjoint() * rho * psi;
  double value = overlap.real();
  if (value < 0.0) {
    if (value < -1e-10) throw InvalidState("fidelity: <psi|rho|psi> significantly negative");
    value = 0.0;
  }
  return std::sqrt(value);
}

MeanStd ensemble_stats(const std::vector<double>& samples) {
  if (samples.empty()) throw EmptyEnsemble("ensemble_stats: no samples");
  double sum = 0.0;
  for (double x : samples) sum += x;
  const double mean = sum / static_cast<double>(samples.size());
  double sq = 0.0;
  for (double x : samples) sq += (x - mean) * (x - mean);
  return {mean, std::sqrt(sq / static_cast<double>(samples.size()))};
}

double opnorm_distance(const ComplexMatrix& rho1, const ComplexMatrix& rho2) {
  if (rho1.rows() != rho2.rows() || rho1.cols() != rho2.cols()) {
    throw DimensionMismatch("opnorm_distance: dimensions differ");
  }
  return linalg::operator_norm(ComplexMatrix(rho1 - rho2));
}

}  // namespace sdd::metrics
