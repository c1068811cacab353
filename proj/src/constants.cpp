#include "twoweight/constants.hpp"

#include <algorithm>
#include <cmath>

namespace twoweight {

InequalityCheck make_check(std::string name, double lhs, double rhs, double constant, double tol) {
  InequalityCheck c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.constant = constant;
  c.holds = lhs <= rhs * (1.0 + tol);
  c.slack = rhs - lhs;
  return c;
}

double stein_constant(double p_conj, double r_conj) {
  if (!(p_conj > 1.0) || std::isinf(p_conj)) throw std::invalid_argument("p' must lie in (1, inf)");
  if (!(r_conj >= 1.0)) throw std::invalid_argument("r' must lie in [1, inf]");
  if (p_conj >= r_conj) return std::pow(p_conj / r_conj, 1.0 / r_conj);
  const double p = Exponents::conjugate(p_conj);
  const double r = Exponents::conjugate(r_conj);
  // r' = ∞ gives r = 1 and the constant p.
  return std::pow(p / r, 1.0 / r);
}

CubeCoefficients conditional_averages(const DyadicSystem& system, const SequenceFunction& g,
                                      const LeafFunction& omega) {
  require_shape(system, omega);
  std::vector<double> num(system.cube_count(), 0.0);
  const double vol = system.leaf_volume();
  for (LeafIndex x = 0; x < system.leaf_count(); ++x) {
    const auto chain = system.chain(x);
    for (std::size_t k = 0; k < chain.size(); ++k) {
      num[chain[k]] += g.at_level(static_cast<int>(k), x) * omega[x] * vol;
    }
  }
  const auto den = weight_masses(system, omega.values());
  for (CubeIndex q = 0; q < num.size(); ++q) num[q] = den[q] == 0.0 ? 0.0 : num[q] / den[q];
  return CubeCoefficients(std::move(num));
}

InequalityCheck verify_stein(const DyadicSystem& system, const SequenceFunction& g,
                             const LeafFunction& omega, double p_conj, double r_conj, double tol) {
  const double constant = stein_constant(p_conj, r_conj);
  const double lhs = norm_lp_lr(system, conditional_averages(system, g, omega), omega, p_conj, r_conj);
  const double rhs = constant * norm_lp_lr(system, g, omega, p_conj, r_conj);
  return make_check("stein", lhs, rhs, constant, tol);
}

LeafFunction conditional_expectation(const DyadicSystem& system, const LeafFunction& h,
                                     const LeafFunction& w, int level) {
  require_shape(system, h);
  const auto avg = weighted_averages(system, h.values(), w.values());
  std::vector<double> out(system.leaf_count());
  for (LeafIndex x = 0; x < out.size(); ++x) out[x] = avg[system.chain(x)[level]];
  return LeafFunction(std::move(out));
}

InequalityCheck verify_doob(const DyadicSystem& system, const LeafFunction& f, const LeafFunction& w,
                            double p, double tol) {
  const double constant = p / (p - 1.0);
  const double lhs = norm_lp(system, maximal_function(system, f, w), w, p);
  const double rhs = constant * norm_lp(system, f, w, p);
  return make_check("doob (scalar)", lhs, rhs, constant, tol);
}

InequalityCheck verify_doob(const DyadicSystem& system, const std::vector<LeafFunction>& levels,
                            const LeafFunction& w, double p, DoobMode mode, double tol) {
  require_shape(system, w);
  if (levels.size() != static_cast<std::size_t>(system.depth()) + 1) {
    throw std::invalid_argument("one leaf function per level is required");
  }
  if (mode == DoobMode::Scalar) throw std::invalid_argument("use the scalar overload");
  const double r = mode == DoobMode::L1 ? 1.0 : kInfinity;
  const double constant = mode == DoobMode::L1 ? p : p / (p - 1.0);

  std::vector<LeafFunction> expectations;
  for (int k = 0; k <= system.depth(); ++k) {
    expectations.push_back(conditional_expectation(system, levels[k], w, k));
  }
  const double vol = system.leaf_volume();
  auto norm = [&](const std::vector<LeafFunction>& seq) {
    std::vector<double> buf(seq.size());
    double s = 0.0;
    for (LeafIndex x = 0; x < system.leaf_count(); ++x) {
      for (std::size_t k = 0; k < seq.size(); ++k) buf[k] = seq[k][x];
      s += std::pow(lr_norm(buf, r), p) * w[x] * vol;
    }
    return std::pow(s, 1.0 / p);
  };
  const double lhs = norm(expectations);
  const double rhs = constant * norm(levels);
  return make_check(mode == DoobMode::L1 ? "doob (l1)" : "doob (l-infinity)", lhs, rhs, constant, tol);
}

CarlesonCheck verify_carleson(const DyadicSystem& system, const StoppingFamily& family,
                              const LeafFunction& f, const LeafFunction& sigma, double p, double tol) {
  require_shape(system, f);
  require_shape(system, sigma);
  CarlesonCheck out;
  const auto mass = weight_masses(system, sigma.values());
  const double vol = system.leaf_volume();

  std::vector<char> used(system.leaf_count(), 0);
  std::vector<char> inside(system.leaf_count(), 0);
  for (const auto& m : family.members) {
    for (LeafIndex x : system.leaves(m.cube)) inside[x] = 1;
    double residual_mass = 0.0;
    for (LeafIndex x : m.residual) {
      if (!inside[x] && out.preconditions_hold) {
        out.preconditions_hold = false;
        out.precondition_failure = "residual leaves outside cube " + to_string(system.cube(m.cube));
      }
      if (used[x] && out.preconditions_hold) {
        out.preconditions_hold = false;
        out.precondition_failure = "residual sets overlap";
      }
      used[x] = 1;
      residual_mass += sigma[x] * vol;
    }
    for (LeafIndex x : system.leaves(m.cube)) inside[x] = 0;
    if (!(mass[m.cube] <= 2.0 * residual_mass * (1.0 + tol)) && out.preconditions_hold) {
      out.preconditions_hold = false;
      out.precondition_failure = "sparseness fails at cube " + to_string(system.cube(m.cube));
    }
  }

  const auto avg = weighted_averages(system, f.values(), sigma.values());
  double s = 0.0;
  for (const auto& m : family.members) s += std::pow(avg[m.cube], p) * mass[m.cube];
  const double constant = std::pow(2.0, 1.0 / p) * p / (p - 1.0);
  out.inequality = make_check("carleson embedding", std::pow(s, 1.0 / p),
                              constant * norm_lp(system, f, sigma, p), constant, tol);
  return out;
}

}  // namespace twoweight
