#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sdd/types.hpp"

namespace sdd::stochastic {

// Reproducible Gaussian stream. Stream seeds are derived from the master
// seed with a splitmix64 counter, so trajectory workers never share state
// and results do not depend on thread scheduling.
//
// Normal variates use Box-Muller on mt19937_64 output: each draw consumes
// exactly two 64-bit words,
//   z = sqrt(-2 ln u1) * cos(2 pi u2),  u1 in (0,1], u2 in [0,1).
// This mapping is part of the regression contract; changing it invalidates
// every seeded expectation in the test suite.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  double gaussian();   // standard normal
  double uniform01();  // in [0,1)

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
};

struct WienerPath {
  double t_final = 0.0;
  std::vector<double> increments;  // N(0, t_final/n_steps) each
  double terminal = 0.0;           // running sum of increments

  int n_steps() const { return static_cast<int>(increments.size()); }
};

// One draw W_t ~ N(0, t). Returns exactly 0 at t = 0 without consuming
// engine state.
double sample_terminal(RngStream& stream, double t);

// The per-pulse noise argument W_{t/N^2} = W_t / N shared by all N pulses of
// one run (Wiener scaling identity).
double shared_pulse_value(double w_t, int n_pulses);

struct CorrelatedPair {
  double w_coarse;  // W_{t/N^2}
  double w_fine;    // W_{t/(N+L)^2}
};

// Jointly samples (W_{t/N^2}, W_{t/(N+L)^2}) as one Wiener path would:
// the finer value is drawn first, then an independent increment with
// variance t*(1/N^2 - 1/(N+L)^2) = L t (2N+L) / (N^2 (N+L)^2) is added.
CorrelatedPair correlated_pair(RngStream& stream, double t, int n_pulses, int cycle_length = 2);

// Independent N(0, t/steps) increments; terminal accumulated in index order.
WienerPath sample_path(RngStream& stream, double t, int steps);

// Pairwise-sums the increments of a 2k-step path into a k-step path over the
// same interval; the result has the exact coarse-grid law.
WienerPath coarsen_path(const WienerPath& path);

}  // namespace sdd::stochastic
