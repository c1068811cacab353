#include "twoweight/ascent.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace twoweight {

namespace {

double norm2(const std::vector<double>& v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

}  // namespace

AscentResult projected_gradient_ascent(std::vector<double> x0, const Objective& value,
                                       const Gradient& gradient, const Projection& project,
                                       const AscentOptions& options) {
  AscentResult res;
  project(x0);
  res.x = std::move(x0);
  res.value = value(res.x);
  if (!std::isfinite(res.value)) res.value = 0.0;

  std::vector<double> grad(res.x.size());
  std::vector<double> trial(res.x.size());
  double step = options.initial_step;
  for (int it = 0; it < options.iterations; ++it) {
    res.iterations = it + 1;
    gradient(res.x, grad);
    const double gnorm = norm2(grad);
    if (!(gnorm > 0.0) || !std::isfinite(gnorm)) break;
    const double scale = std::max(norm2(res.x), 1e-300) / gnorm;

    bool accepted = false;
    double gain = 0.0;
    while (step > 1e-14) {
      for (std::size_t i = 0; i < trial.size(); ++i) trial[i] = res.x[i] + step * scale * grad[i];
      project(trial);
      const double v = value(trial);
      if (std::isfinite(v) && v > res.value) {
        gain = v - res.value;
        res.value = v;
        res.x.swap(trial);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    step = std::min(step * 2.0, 1e6);
    if (gain <= options.stall * res.value) break;
  }
  return res;
}

void central_difference_gradient(const Objective& value, const std::vector<double>& x,
                                 std::vector<double>& grad) {
  grad.resize(x.size());
  std::vector<double> probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(x[i]));
    probe[i] = x[i] + h;
    const double up = value(probe);
    probe[i] = x[i] - h;
    const double down = value(probe);
    probe[i] = x[i];
    grad[i] = (up - down) / (2.0 * h);
  }
}

PowerIterationResult power_iteration(const LinearMap& apply, std::vector<double> start,
                                     double tolerance, int max_iterations) {
  PowerIterationResult res;
  double n = norm2(start);
  if (!(n > 0.0)) {
    res.vector = std::move(start);
    res.converged = true;
    return res;
  }
  for (double& v : start) v /= n;
  std::vector<double> next(start.size());
  for (int it = 0; it < max_iterations; ++it) {
    res.iterations = it + 1;
    apply(start, next);
    const double mu = std::inner_product(start.begin(), start.end(), next.begin(), 0.0);
    double r2 = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) r2 += (next[i] - mu * start[i]) * (next[i] - mu * start[i]);
    res.eigenvalue = mu;
    res.residual = mu > 0.0 ? std::sqrt(r2) / mu : 0.0;
    if (!(mu > 0.0) || res.residual <= tolerance) {
      res.converged = true;
      break;
    }
    n = norm2(next);
    for (std::size_t i = 0; i < next.size(); ++i) start[i] = next[i] / n;
  }
  res.vector = std::move(start);
  return res;
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 over the pair.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace twoweight
