#pragma once

#include <cstdint>
#include <vector>

#include "sdd/types.hpp"

namespace sdd::metrics {

// F = sqrt(<psi|rho|psi>) between a pure reference and a density matrix.
// Values of <psi|rho|psi> in [-1e-10, 0) are clamped to zero; anything more
// negative indicates a broken state and raises an error.
double fidelity(const ComplexVector& psi, const ComplexMatrix& rho);

struct MeanStd {
  double mean = 0.0;
  double std_dev = 0.0;  // population convention, sqrt((1/M) sum (x - mean)^2)
};

MeanStd ensemble_stats(const std::vector<double>& samples);

// ||rho1 - rho2||_op.
double opnorm_distance(const ComplexMatrix& rho1, const ComplexMatrix& rho2);

struct FidelityCurve {
  std::vector<double> abscissa;  // gamma*t values or pulse counts
  std::vector<double> mean;
  std::vector<double> std_dev;
  long trials = 0;
  std::uint64_t seed = 0;
};

}  // namespace sdd::metrics
