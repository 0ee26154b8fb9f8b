#include <doctest.h>

#include <cmath>
#include <vector>

#include "sdd/stochastic.hpp"

using namespace sdd;
using stochastic::RngStream;

namespace {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

Moments moments(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  double sq = 0.0;
  for (double x : xs) sq += (x - mean) * (x - mean);
  return {mean, sq / static_cast<double>(xs.size())};
}

}  // namespace

TEST_CASE("sample_terminal: exact zero at t=0, determinism, law") {
  RngStream stream(123, 0);
  CHECK(stochastic::sample_terminal(stream, 0.0) == 0.0);
  CHECK_THROWS_AS(stochastic::sample_terminal(stream, -1.0), NegativeTime);

  RngStream a(99, 5), b(99, 5);
  for (int k = 0; k < 10; ++k) {
    CHECK(stochastic::sample_terminal(a, 2.0) == stochastic::sample_terminal(b, 2.0));
  }

  const double t = 2.0;
  const int n_draws = 100000;
  std::vector<double> draws(n_draws);
  RngStream stream2(2024, 1);
  for (auto& x : draws) x = stochastic::sample_terminal(stream2, t);
  const auto m = moments(draws);
  CHECK(std::abs(m.mean) <= 4.0 * std::sqrt(t / n_draws));
  CHECK(std::abs(m.variance - t) <= 0.05 * t);
}

TEST_CASE("shared_pulse_value: trivial cases and the t/N^2 law") {
  CHECK(stochastic::shared_pulse_value(0.0, 17) == 0.0);
  CHECK(stochastic::shared_pulse_value(1.25, 1) == 1.25);

  const double t = 3.0;
  const int n_pulses = 7;
  const int n_draws = 100000;
  std::vector<double> draws(n_draws);
  RngStream stream(512, 2);
  for (auto& x : draws) {
    x = stochastic::shared_pulse_value(stochastic::sample_terminal(stream, t), n_pulses);
  }
  const double expected = t / (n_pulses * n_pulses);
  CHECK(std::abs(moments(draws).variance - expected) <= 0.05 * expected);
}

TEST_CASE("correlated_pair: marginals and difference variance") {
  RngStream zero_stream(1, 1);
  const auto zero = stochastic::correlated_pair(zero_stream, 0.0, 8);
  CHECK(zero.w_coarse == 0.0);
  CHECK(zero.w_fine == 0.0);

  const double t = 2.5;
  const int n = 10;
  const int n_draws = 100000;
  std::vector<double> coarse(n_draws), fine(n_draws), gap(n_draws);
  RngStream stream(31337, 3);
  for (int k = 0; k < n_draws; ++k) {
    const auto pair = stochastic::correlated_pair(stream, t, n);
    coarse[k] = pair.w_coarse;
    fine[k] = pair.w_fine;
    gap[k] = pair.w_coarse - pair.w_fine;
  }
  const double var_coarse = t / (n * n);
  const double var_fine = t / ((n + 2.0) * (n + 2.0));
  // E[(W_{t/N^2} - W_{t/(N+2)^2})^2] = 4 t (N+1) / (N^2 (N+2)^2).
  const double var_gap = 4.0 * t * (n + 1.0) / (n * n * (n + 2.0) * (n + 2.0));
  CHECK(std::abs(moments(coarse).variance - var_coarse) <= 0.05 * var_coarse);
  CHECK(std::abs(moments(fine).variance - var_fine) <= 0.05 * var_fine);
  CHECK(std::abs(moments(gap).variance - var_gap) <= 0.05 * var_gap);
}

TEST_CASE("correlated_pair: cycle-4 coupling") {
  const double t = 1.5;
  const int n = 8, cycle = 4;
  const int n_draws = 100000;
  std::vector<double> fine(n_draws), gap(n_draws);
  RngStream stream(777, 4);
  for (int k = 0; k < n_draws; ++k) {
    const auto pair = stochastic::correlated_pair(stream, t, n, cycle);
    fine[k] = pair.w_fine;
    gap[k] = pair.w_coarse - pair.w_fine;
  }
  const double var_fine = t / ((n + 4.0) * (n + 4.0));
  const double var_gap = t * (1.0 / (n * n) - 1.0 / ((n + 4.0) * (n + 4.0)));
  CHECK(std::abs(moments(fine).variance - var_fine) <= 0.05 * var_fine);
  CHECK(std::abs(moments(gap).variance - var_gap) <= 0.05 * var_gap);
}

TEST_CASE("sample_path: single step, terminal law, refinement consistency") {
  RngStream stream(5150, 5);
  const auto single = stochastic::sample_path(stream, 1.7, 1);
  CHECK(single.n_steps() == 1);
  CHECK(single.terminal == single.increments[0]);

  const double t = 0.8;
  const int n_draws = 100000;
  std::vector<double> terminals(n_draws);
  RngStream stream2(5151, 6);
  for (auto& x : terminals) x = stochastic::sample_path(stream2, t, 4).terminal;
  CHECK(std::abs(moments(terminals).variance - t) <= 0.05 * t);

  // Pairwise-summed increments of a 2k-step path follow the k-step law.
  const int k_steps = 8;
  std::vector<double> coarse_increments;
  coarse_increments.reserve(n_draws);
  RngStream stream3(5152, 7);
  for (int r = 0; r < n_draws / k_steps; ++r) {
    const auto fine = stochastic::sample_path(stream3, t, 2 * k_steps);
    const auto coarse = stochastic::coarsen_path(fine);
    CHECK(std::abs(coarse.terminal - fine.terminal) <= 1e-12);
    for (double dw : coarse.increments) coarse_increments.push_back(dw);
  }
  const double expected = t / k_steps;
  const auto m = moments(coarse_increments);
  CHECK(std::abs(m.mean) <= 4.0 * std::sqrt(expected / coarse_increments.size()));
  CHECK(std::abs(m.variance - expected) <= 0.05 * expected);
}

TEST_CASE("streams with different indices are uncorrelated") {
  const int n_draws = 10000;
  RngStream a(424242, 0), b(424242, 1);
  std::vector<double> xs(n_draws), ys(n_draws);
  for (int k = 0; k < n_draws; ++k) {
    xs[k] = a.gaussian();
    ys[k] = b.gaussian();
  }
  const auto mx = moments(xs), my = moments(ys);
  double cov = 0.0;
  for (int k = 0; k < n_draws; ++k) cov += (xs[k] - mx.mean) * (ys[k] - my.mean);
  cov /= n_draws;
  CHECK(std::abs(cov / std::sqrt(mx.variance * my.variance)) < 0.02);
}

TEST_CASE("stream output is a pure function of (seed, index, call sequence)") {
  RngStream first(7, 3);
  std::vector<double> sequence;
  for (int k = 0; k < 5; ++k) sequence.push_back(first.gaussian());
  RngStream second(7, 3);
  for (int k = 0; k < 5; ++k) CHECK(second.gaussian() == sequence[k]);
}
