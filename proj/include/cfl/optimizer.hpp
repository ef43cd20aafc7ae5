#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "cfl/rng.hpp"

namespace cfl {

using Objective = std::function<double(std::span<const double>)>;

// Closed box lower <= x <= upper, optionally intersected with sum(x) <= sum_upper.
struct ParameterSpace {
  std::vector<double> lower;
  std::vector<double> upper;
  std::optional<double> sum_upper;

  std::size_t dimension() const { return lower.size(); }
  // Throws std::invalid_argument when the region has no volume.
  void validate() const;
  bool contains(std::span<const double> x, double slack = 1e-12) const;
  // Largest [lo, hi] with x + eta * d feasible for every eta in it. Requires x feasible.
  std::pair<double, double> ray_interval(std::span<const double> x, std::span<const double> d) const;
  // Removes rounding excursions (at most a few ulps) outside the region.
  void project(std::span<double> x) const;
  // Uniform draw from the region.
  std::vector<double> sample(Rng& rng) const;
};

struct LineSearchConfig {
  // Evenly spaced samples over the feasible interval before refinement; the
  // best sample and its neighbours form the bracket. Zero switches to
  // expanding-step bracketing from the incumbent.
  std::size_t grid_points = 32;
  double bracket_growth = 1.618034;
  double tolerance = 1e-7;
  std::size_t max_steps = 100;
};

struct LineResult {
  double eta = 0.0;
  double value = 0.0;
  std::size_t evaluations = 0;
};

// Maximizes f over [lo, hi]. `incumbent` (in [lo, hi]) is the current point;
// it wins ties, so the returned value never drops below f(incumbent). A
// degenerate interval returns the incumbent. NaN values count as -infinity.
LineResult line_maximize(const std::function<double(double)>& f, double lo, double hi,
                         const LineSearchConfig& cfg = {}, double incumbent = 0.0,
                         std::optional<double> incumbent_value = std::nullopt);

struct PowellConfig {
  std::size_t restarts = 8;
  double epsilon = 1e-4;
  std::size_t max_iterations = 50;
  LineSearchConfig line;
  std::uint64_t seed = 0;
  // Optional CSV sink: restart,iteration,x_1..x_D,objective
  std::ostream* trace = nullptr;
};

struct RestartLog {
  std::vector<double> start;
  std::vector<double> end;
  double start_objective = 0.0;
  double objective = 0.0;
  std::size_t iterations = 0;
  std::size_t line_searches = 0;
};

struct OptResult {
  std::vector<double> best_point;
  double best_objective = 0.0;
  std::vector<RestartLog> restarts;
};

// Powell direction-set maximization from seeded uniform starts. Each
// iteration line-searches the D current directions, replaces the oldest with
// the net displacement and searches along it once more. With D = 1 a single
// pass is made. Stops when an iteration moves less than epsilon.
OptResult powell_maximize(const Objective& objective, const ParameterSpace& space, const PowellConfig& cfg = {});

// Same, from caller-supplied starting points (one restart each).
OptResult powell_maximize_from(const Objective& objective, const ParameterSpace& space,
                               const std::vector<std::vector<double>>& starts, const PowellConfig& cfg = {});

}  // namespace cfl
