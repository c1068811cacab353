#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "oracle.hpp"
#include "twoweight/dyadic.hpp"

namespace th {

namespace tw = twoweight;

inline tw::CubeId id(const oracle::Cube& c) { return tw::CubeId{c.level, c.idx}; }

// Library index of every oracle cube, in oracle order.
inline std::vector<tw::CubeIndex> lib_index(const tw::DyadicSystem& sys, const oracle::System& os) {
  std::vector<tw::CubeIndex> out;
  for (const auto& c : os.cubes) out.push_back(sys.index_of(id(c)));
  return out;
}

inline oracle::Vec to_oracle(const std::vector<tw::CubeIndex>& map, const tw::CubeCoefficients& c) {
  oracle::Vec out(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) out[i] = c[map[i]];
  return out;
}

inline tw::CubeCoefficients from_oracle(const std::vector<tw::CubeIndex>& map, const oracle::Vec& v) {
  std::vector<double> out(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) out[map[i]] = v[i];
  return tw::CubeCoefficients(std::move(out));
}

inline std::vector<double> random_values(std::mt19937_64& rng, std::size_t n, double zero_prob = 0.0,
                                         double spread = 1.0) {
  std::normal_distribution<double> normal(0.0, spread);
  std::bernoulli_distribution zero(zero_prob);
  std::vector<double> v(n);
  for (double& x : v) x = zero(rng) ? 0.0 : std::exp(normal(rng));
  return v;
}

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace th
