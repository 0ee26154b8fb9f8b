#include "sdd/stochastic.hpp"

#include <cmath>

namespace sdd::stochastic {

namespace {

std::uint64_t splitmix64_at(std::uint64_t state, std::uint64_t counter) {
  std::uint64_t z = state + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void require_nonnegative_time(double t, const char* who) {
  if (!(t >= 0.0)) throw NegativeTime(std::string(who) + ": time must be >= 0");
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed),
      stream_index_(stream_index),
      engine_(splitmix64_at(master_seed, stream_index)) {}

double RngStream::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::gaussian() {
  const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;  // (0,1]
  const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;        // [0,1)
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double sample_terminal(RngStream& stream, double t) {
  require_nonnegative_time(t, "sample_terminal");
  if (t == 0.0) return 0.0;
  return std::sqrt(t) * stream.gaussian();
}

double shared_pulse_value(double w_t, int n_pulses) {
  if (n_pulses < 1) throw Error("shared_pulse_value: need at least one pulse");
  return w_t / static_cast<double>(n_pulses);
}

CorrelatedPair correlated_pair(RngStream& stream, double t, int n_pulses, int cycle_length) {
  require_nonnegative_time(t, "correlated_pair");
  if (n_pulses < 1) throw Error("correlated_pair: need at least one pulse");
  if (cycle_length < 1) throw Error("correlated_pair: cycle length must be >= 1");
  if (t == 0.0) return {0.0, 0.0};
  const double n = static_cast<double>(n_pulses);
  const double l = static_cast<double>(cycle_length);
  const double var_fine = t / ((n + l) * (n + l));
  const double var_gap = t * l * (2.0 * n + l) / (n * n * (n + l) * (n + l));
  const double w_fine = std::sqrt(var_fine) * stream.gaussian();
  const double w_coarse = w_fine + std::sqrt(var_gap) * stream.gaussian();
  return {w_coarse, w_fine};
}

WienerPath sample_path(RngStream& stream, double t, int steps) {
  require_nonnegative_time(t, "sample_path");
  if (steps < 1) throw Error("sample_path: need at least one step");
  WienerPath path;
  path.t_final = t;
  path.increments.resize(static_cast<std::size_t>(steps));
  const double scale = std::sqrt(t / static_cast<double>(steps));
  double acc = 0.0;
  for (auto& dw : path.increments) {
    dw = scale * stream.gaussian();
    acc += dw;
  }
  path.terminal = acc;
  return path;
}

WienerPath coarsen_path(const WienerPath& path) {
  if (path.n_steps() % 2 != 0) throw Error("coarsen_path: step count must be even");
  WienerPath coarse;
  coarse.t_final = path.t_final;
  coarse.increments.resize(static_cast<std::size_t>(path.n_steps() / 2));
  double acc = 0.0;
  for (std::size_t k = 0; k < coarse.increments.size(); ++k) {
    coarse.increments[k] = path.increments[2 * k] + path.increments[2 * k + 1];
    acc += coarse.increments[k];
  }
  coarse.terminal = acc;
  return coarse;
}

}  // namespace sdd::stochastic
