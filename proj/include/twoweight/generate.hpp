#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "twoweight/testing.hpp"

namespace twoweight {

/// unit, random (uniform on [0,1)), or sawyer:a with λ_Q = |Q|^{a/d}.
struct LambdaPreset {
  enum class Kind { Unit, Random, Sawyer } kind = Kind::Unit;
  double a = 0.0;

  static LambdaPreset parse(const std::string& text);
  std::string to_string() const;
};

/// unit, lognormal exp(N(0,1)), or sparse (lognormal, each leaf zero with probability 0.3).
enum class WeightPreset { Unit, Lognormal, Sparse };
WeightPreset parse_weight_preset(const std::string& text);
std::string to_string(WeightPreset preset);

/// Parses a decimal or "inf".
double parse_exponent(const std::string& text);
std::string format_exponent(double value);

struct GenParams {
  int dimension = 1;
  int depth = 2;
  double p = 2.0;
  double r = 2.0;
  LambdaPreset lambda;
  WeightPreset weights = WeightPreset::Unit;
};

/// Deterministic per seed.
Instance generate_instance(std::uint64_t seed, const GenParams& params);

/// Parameters of the randomized sweep: every weight preset, r ∈ {1,2,4,∞},
/// p ∈ {1.5,2,3}, d ∈ {1,2}, each λ preset, depth ≤ 4 for d = 1 and ≤ 2 for d = 2.
GenParams sweep_params(std::uint64_t seed);

/// Random non-negative f and coefficients a for the stopping and trace suites.
std::pair<LeafFunction, CubeCoefficients> random_test_functions(std::uint64_t seed, const Instance& inst);

}  // namespace twoweight
