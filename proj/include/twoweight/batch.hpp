#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

#include "twoweight/generate.hpp"
#include "twoweight/testing.hpp"

namespace twoweight {

/// Fixed values replace the per-seed sweep parameters.
struct ParamOverrides {
  std::optional<int> dimension;
  std::optional<int> depth;
  std::optional<double> p;
  std::optional<double> r;
  std::optional<LambdaPreset> lambda;
  std::optional<WeightPreset> weights;

  GenParams resolve(std::uint64_t seed) const;
};

struct BatchOptions {
  std::uint64_t seed_begin = 0;
  std::uint64_t seed_end = 0;  // exclusive
  ParamOverrides params;
  Budget budget;               // budget.seed is replaced by each instance seed
  double tol = kDefaultTolerance;
  unsigned threads = 0;        // 0: hardware concurrency
};

struct BatchRow {
  std::uint64_t seed = 0;
  GenParams params;
  ConstantsBundle constants;
  double bound = 0.0;
  double ratio = 0.0;  // Ctilde_lower / (C + Cstar_upper), 0 when both vanish
  bool pass = false;
};

BatchRow evaluate_seed(std::uint64_t seed, const GenParams& params, const Budget& budget, double tol);
std::vector<BatchRow> run_batch(const BatchOptions& options);
void write_csv(std::ostream& out, const std::vector<BatchRow>& rows);

struct SearchOptions {
  std::uint64_t seed = 0;
  GenParams params;
  int iterations = 100;
  int restart_every = 25;
  std::size_t top_k = 5;
  Budget budget{4, 60, 0};
  double tol = kDefaultTolerance;
};

struct SearchEntry {
  double ratio = 0.0;
  Instance instance;
  VerificationReport report;
};

/// Random-restart hill climbing over multiplicative perturbations of σ, ω
/// and λ, maximizing Ctilde_lower / (C + Cstar_upper). Best first.
std::vector<SearchEntry> run_search(const SearchOptions& options);

double score(const VerificationReport& report);

}  // namespace twoweight
