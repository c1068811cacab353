#include "twoweight/generate.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "twoweight/ascent.hpp"

namespace twoweight {

LambdaPreset LambdaPreset::parse(const std::string& text) {
  LambdaPreset out;
  if (text == "unit") return out;
  if (text == "random") {
    out.kind = Kind::Random;
    return out;
  }
  if (text.rfind("sawyer:", 0) == 0) {
    out.kind = Kind::Sawyer;
    std::size_t used = 0;
    const std::string arg = text.substr(7);
    try {
      out.a = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != arg.size() || !std::isfinite(out.a)) {
      throw std::invalid_argument("bad sawyer exponent: " + arg);
    }
    return out;
  }
  throw std::invalid_argument("unknown lambda preset: " + text);
}

std::string LambdaPreset::to_string() const {
  switch (kind) {
    case Kind::Unit: return "unit";
    case Kind::Random: return "random";
    case Kind::Sawyer: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "sawyer:%.17g", a);
      return buf;
    }
  }
  return "unit";
}

WeightPreset parse_weight_preset(const std::string& text) {
  if (text == "unit") return WeightPreset::Unit;
  if (text == "lognormal") return WeightPreset::Lognormal;
  if (text == "sparse") return WeightPreset::Sparse;
  throw std::invalid_argument("unknown weight preset: " + text);
}

std::string to_string(WeightPreset preset) {
  switch (preset) {
    case WeightPreset::Unit: return "unit";
    case WeightPreset::Lognormal: return "lognormal";
    case WeightPreset::Sparse: return "sparse";
  }
  return "unit";
}

double parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity") return kInfinity;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw std::invalid_argument("bad exponent: " + text);
  return v;
}

std::string format_exponent(double value) {
  if (std::isinf(value)) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

std::vector<double> weights(std::mt19937_64& rng, std::size_t n, WeightPreset preset) {
  std::vector<double> w(n, 1.0);
  if (preset == WeightPreset::Unit) return w;
  std::normal_distribution<double> normal(0.0, 1.0);
  std::bernoulli_distribution zero(0.3);
  for (double& v : w) {
    v = std::exp(normal(rng));
    if (preset == WeightPreset::Sparse && zero(rng)) v = 0.0;
  }
  return w;
}

}  // namespace

Instance generate_instance(std::uint64_t seed, const GenParams& params) {
  if (params.dimension < 1) throw std::invalid_argument("dimension must be at least 1");
  if (params.depth < 0) throw std::invalid_argument("depth must be non-negative");
  const Exponents exps(params.p, params.r);
  DyadicSystem sys(params.dimension, params.depth);
  std::mt19937_64 rng(seed);

  std::vector<double> lambda(sys.cube_count(), 1.0);
  switch (params.lambda.kind) {
    case LambdaPreset::Kind::Unit:
      break;
    case LambdaPreset::Kind::Random: {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (double& v : lambda) v = u(rng);
      break;
    }
    case LambdaPreset::Kind::Sawyer: {
      const double a = params.lambda.a;
      if (!(a >= 0.0 && a < params.dimension)) {
        throw std::invalid_argument("sawyer exponent must satisfy 0 <= a < d");
      }
      for (CubeIndex q = 0; q < lambda.size(); ++q) {
        lambda[q] = std::pow(sys.volume(q), a / params.dimension);
      }
      break;
    }
  }
  auto sigma = weights(rng, sys.leaf_count(), params.weights);
  auto omega = weights(rng, sys.leaf_count(), params.weights);
  return Instance(sys, CubeCoefficients(std::move(lambda)), LeafFunction(std::move(sigma)),
                  LeafFunction(std::move(omega)), exps);
}

GenParams sweep_params(std::uint64_t seed) {
  static constexpr double kR[] = {1.0, 2.0, 4.0, kInfinity};
  static constexpr double kP[] = {1.5, 2.0, 3.0};
  GenParams g;
  g.weights = static_cast<WeightPreset>(seed % 3);
  g.r = kR[(seed / 3) % 4];
  g.p = kP[(seed / 12) % 3];
  g.dimension = static_cast<int>((seed / 36) % 2) + 1;
  switch ((seed / 72) % 3) {
    case 0: g.lambda = LambdaPreset::parse("random"); break;
    case 1: g.lambda = LambdaPreset::parse("unit"); break;
    default: g.lambda = LambdaPreset::parse("sawyer:0.5"); break;
  }
  std::mt19937_64 rng(split_seed(seed, 0xD1CE));
  const int max_depth = g.dimension == 1 ? 4 : 2;
  g.depth = std::uniform_int_distribution<int>(0, max_depth)(rng);
  return g;
}

std::pair<LeafFunction, CubeCoefficients> random_test_functions(std::uint64_t seed, const Instance& inst) {
  std::mt19937_64 rng(split_seed(seed, 0xF00D));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::bernoulli_distribution zero(0.25);
  std::vector<double> f(inst.system.leaf_count());
  for (double& v : f) v = zero(rng) ? 0.0 : std::exp(2.0 * normal(rng));
  std::vector<double> a(inst.system.cube_count());
  for (double& v : a) v = zero(rng) ? 0.0 : std::exp(2.0 * normal(rng));
  return {LeafFunction(std::move(f)), CubeCoefficients(std::move(a))};
}

}  // namespace twoweight
