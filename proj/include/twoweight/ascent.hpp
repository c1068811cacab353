#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace twoweight {

using Objective = std::function<double(const std::vector<double>&)>;
using Gradient = std::function<void(const std::vector<double>&, std::vector<double>&)>;
/// Maps a point back onto the feasible set in place.
using Projection = std::function<void(std::vector<double>&)>;

struct AscentOptions {
  int iterations = 200;
  /// Initial step relative to ‖x‖₂/‖∇‖₂.
  double initial_step = 0.1;
  /// Stop once an accepted step improves the value by less than this, relatively.
  double stall = 1e-14;
};

struct AscentResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

/// Projected gradient ascent with a backtracking step: a rejected step is
/// halved, an accepted one doubled for the next iteration.
AscentResult projected_gradient_ascent(std::vector<double> x0, const Objective& value,
                                       const Gradient& gradient, const Projection& project,
                                       const AscentOptions& options = {});

/// Central differences with h_i = 1e-6 · max(1, |x_i|).
void central_difference_gradient(const Objective& value, const std::vector<double>& x,
                                 std::vector<double>& grad);

struct PowerIterationResult {
  double eigenvalue = 0.0;
  std::vector<double> vector;
  double residual = 0.0;  // ‖Mv − μv‖ / (μ‖v‖)
  int iterations = 0;
  bool converged = false;
};

using LinearMap = std::function<void(const std::vector<double>&, std::vector<double>&)>;

/// Largest eigenvalue of a symmetric positive semidefinite map.
PowerIterationResult power_iteration(const LinearMap& apply, std::vector<double> start,
                                     double tolerance = 1e-10, int max_iterations = 1000000);

/// Independent stream for restart `index` of a run seeded with `seed`.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace twoweight
