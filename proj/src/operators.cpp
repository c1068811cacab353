#include "twoweight/operators.hpp"

#include <algorithm>
#include <cmath>

namespace twoweight {

double lr_norm(std::span<const double> values, double r) {
  if (std::isinf(r)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, v);
    return m;
  }
  double s = 0.0;
  if (r == 1.0) {
    for (double v : values) s += v;
    return s;
  }
  for (double v : values) s += std::pow(v, r);
  return std::pow(s, 1.0 / r);
}

// SequenceFunction ---------------------------------------------------------

SequenceFunction::SequenceFunction(const DyadicSystem& system)
    : levels_(static_cast<std::size_t>(system.depth()) + 1,
              std::vector<double>(system.leaf_count(), 0.0)) {}

SequenceFunction SequenceFunction::from_components(const DyadicSystem& system,
                                                   const std::vector<LeafFunction>& components) {
  if (components.size() != system.cube_count()) {
    throw std::invalid_argument("one component per cube is required");
  }
  SequenceFunction g(system);
  for (CubeIndex q = 0; q < system.cube_count(); ++q) {
    require_shape(system, components[q]);
    const int k = system.level(q);
    for (LeafIndex x : system.leaves(q)) g.levels_[k][x] = components[q][x];
  }
  return g;
}

SequenceFunction SequenceFunction::piecewise_constant(const DyadicSystem& system,
                                                      const CubeCoefficients& a) {
  require_shape(system, a);
  SequenceFunction g(system);
  for (LeafIndex x = 0; x < system.leaf_count(); ++x) {
    const auto chain = system.chain(x);
    for (std::size_t k = 0; k < chain.size(); ++k) g.levels_[k][x] = a[chain[k]];
  }
  return g;
}

void SequenceFunction::set_at_level(int k, LeafIndex x, double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument("sequence function values must be finite and non-negative");
  }
  levels_.at(k).at(x) = value;
}

LeafFunction SequenceFunction::component(const DyadicSystem& system, CubeIndex q) const {
  std::vector<double> out(system.leaf_count(), 0.0);
  const int k = system.level(q);
  for (LeafIndex x : system.leaves(q)) out[x] = levels_[k][x];
  return LeafFunction(std::move(out));
}

// DyadicOperator -----------------------------------------------------------

DyadicOperator::DyadicOperator(DyadicSystem system, CubeCoefficients lambda)
    : system_(std::move(system)), lambda_(std::move(lambda)) {
  require_shape(system_, lambda_);
}

CubeCoefficients DyadicOperator::apply(const LeafFunction& f) const {
  require_shape(system_, f);
  auto c = averages(system_, f.values());
  for (CubeIndex q = 0; q < c.size(); ++q) c[q] = lambda_[q] * c[q];
  return CubeCoefficients(std::move(c));
}

CubeCoefficients DyadicOperator::apply_localized(const LeafFunction& f, CubeIndex R) const {
  if (R >= system_.cube_count()) throw std::out_of_range("unknown localization cube");
  auto c = apply(f).vector();
  for (CubeIndex q = 0; q < c.size(); ++q) {
    if (!system_.contains(R, q)) c[q] = 0.0;
  }
  return CubeCoefficients(std::move(c));
}

LeafFunction DyadicOperator::chain_sum(const std::vector<double>& per_cube, CubeIndex R) const {
  std::vector<double> out(system_.leaf_count(), 0.0);
  const int top = system_.level(R);
  for (LeafIndex x : system_.leaves(R)) {
    const auto chain = system_.chain(x);
    double s = 0.0;
    for (std::size_t k = top; k < chain.size(); ++k) s += per_cube[chain[k]];
    out[x] = s;
  }
  return LeafFunction(std::move(out));
}

LeafFunction DyadicOperator::apply_adjoint_localized(const CubeCoefficients& a, const LeafFunction& w,
                                                     CubeIndex R) const {
  require_shape(system_, a);
  require_shape(system_, w);
  if (R >= system_.cube_count()) throw std::out_of_range("unknown localization cube");
  auto per_cube = averages(system_, w.values());
  for (CubeIndex q = 0; q < per_cube.size(); ++q) per_cube[q] = lambda_[q] * a[q] * per_cube[q];
  return chain_sum(per_cube, R);
}

LeafFunction DyadicOperator::apply_adjoint(const CubeCoefficients& a, const LeafFunction& w) const {
  return apply_adjoint_localized(a, w, system_.root());
}

LeafFunction DyadicOperator::apply_adjoint_localized(const SequenceFunction& g, const LeafFunction& w,
                                                     CubeIndex R) const {
  require_shape(system_, w);
  if (R >= system_.cube_count()) throw std::out_of_range("unknown localization cube");
  if (g.depth() != system_.depth() || g.leaf_count() != system_.leaf_count()) {
    throw std::invalid_argument("sequence function does not match the system");
  }
  std::vector<double> per_cube(system_.cube_count(), 0.0);
  const double vol = system_.leaf_volume();
  for (LeafIndex x = 0; x < system_.leaf_count(); ++x) {
    const auto chain = system_.chain(x);
    for (std::size_t k = 0; k < chain.size(); ++k) {
      per_cube[chain[k]] += g.at_level(static_cast<int>(k), x) * w[x] * vol;
    }
  }
  for (CubeIndex q = 0; q < per_cube.size(); ++q) {
    per_cube[q] = lambda_[q] * (per_cube[q] / system_.volume(q));
  }
  return chain_sum(per_cube, R);
}

LeafFunction DyadicOperator::apply_adjoint(const SequenceFunction& g, const LeafFunction& w) const {
  return apply_adjoint_localized(g, w, system_.root());
}

LeafFunction DyadicOperator::apply_scalar_localized(const LeafFunction& f, CubeIndex R) const {
  if (R >= system_.cube_count()) throw std::out_of_range("unknown localization cube");
  return chain_sum(apply(f).vector(), R);
}

LeafFunction DyadicOperator::apply_scalar(const LeafFunction& f) const {
  return apply_scalar_localized(f, system_.root());
}

// Norms --------------------------------------------------------------------

double pointwise_lr(const DyadicSystem& system, const CubeCoefficients& out, LeafIndex leaf, double r) {
  const auto chain = system.chain(leaf);
  double buf[64];
  for (std::size_t k = 0; k < chain.size(); ++k) buf[k] = out[chain[k]];
  return lr_norm(std::span<const double>(buf, chain.size()), r);
}

double pointwise_lr(const DyadicSystem& system, const CubeCoefficients& out, const CubeId& leaf,
                    double r) {
  require_shape(system, out);
  const CubeIndex q = system.index_of(leaf);
  if (!system.is_leaf(q)) throw std::invalid_argument("pointwise norm needs a finest-level cube");
  return pointwise_lr(system, out, q - system.level_begin(system.depth()), r);
}

double norm_lp(const DyadicSystem& system, const LeafFunction& h, const LeafFunction& w, double p) {
  require_shape(system, h);
  require_shape(system, w);
  const double vol = system.leaf_volume();
  double s = 0.0;
  for (LeafIndex x = 0; x < system.leaf_count(); ++x) s += std::pow(h[x], p) * w[x] * vol;
  return std::pow(s, 1.0 / p);
}

double norm_lp_lr(const DyadicSystem& system, const CubeCoefficients& out, const LeafFunction& w,
                  double p, double r) {
  require_shape(system, out);
  require_shape(system, w);
  const double vol = system.leaf_volume();
  double s = 0.0;
  for (LeafIndex x = 0; x < system.leaf_count(); ++x) {
    s += std::pow(pointwise_lr(system, out, x, r), p) * w[x] * vol;
  }
  return std::pow(s, 1.0 / p);
}

double norm_lp_lr(const DyadicSystem& system, const SequenceFunction& g, const LeafFunction& w,
                  double p, double r) {
  require_shape(system, w);
  const double vol = system.leaf_volume();
  std::vector<double> buf(static_cast<std::size_t>(g.depth()) + 1);
  double s = 0.0;
  for (LeafIndex x = 0; x < system.leaf_count(); ++x) {
    for (int k = 0; k <= g.depth(); ++k) buf[k] = g.at_level(k, x);
    s += std::pow(lr_norm(buf, r), p) * w[x] * vol;
  }
  return std::pow(s, 1.0 / p);
}

double norm_linf_lr(const DyadicSystem& system, const CubeCoefficients& a, const LeafFunction& w,
                    double r) {
  require_shape(system, a);
  require_shape(system, w);
  double m = 0.0;
  for (LeafIndex x = 0; x < system.leaf_count(); ++x) {
    if (w[x] > 0.0) m = std::max(m, pointwise_lr(system, a, x, r));
  }
  return m;
}

LeafFunction pointwise_norm(const DyadicSystem& system, const CubeCoefficients& a, double r) {
  require_shape(system, a);
  std::vector<double> out(system.leaf_count());
  for (LeafIndex x = 0; x < out.size(); ++x) out[x] = pointwise_lr(system, a, x, r);
  return LeafFunction(std::move(out));
}

// Pairing, maximal function, linearization -------------------------------

double dual_pairing(const DyadicOperator& op, const LeafFunction& f, const CubeCoefficients& a,
                    const LeafFunction& sigma, const LeafFunction& omega) {
  const auto& sys = op.system();
  require_shape(sys, a);
  const auto c = op.apply(pointwise_product(f, sigma));
  const auto omega_mass = weight_masses(sys, omega.values());
  double s = 0.0;
  for (CubeIndex q = 0; q < sys.cube_count(); ++q) s += c[q] * a[q] * omega_mass[q];
  return s;
}

double dual_pairing_leafwise(const DyadicOperator& op, const LeafFunction& f,
                             const CubeCoefficients& a, const LeafFunction& sigma,
                             const LeafFunction& omega) {
  const auto& sys = op.system();
  require_shape(sys, a);
  require_shape(sys, omega);
  const auto c = op.apply(pointwise_product(f, sigma));
  const double vol = sys.leaf_volume();
  double s = 0.0;
  for (LeafIndex x = 0; x < sys.leaf_count(); ++x) {
    double inner = 0.0;
    for (CubeIndex q : sys.chain(x)) inner += c[q] * a[q];
    s += inner * omega[x] * vol;
  }
  return s;
}

LeafFunction maximal_function(const DyadicSystem& system, const LeafFunction& f, const LeafFunction& w) {
  require_shape(system, f);
  require_shape(system, w);
  const auto avg = weighted_averages(system, f.values(), w.values());
  std::vector<double> out(system.leaf_count(), 0.0);
  for (LeafIndex x = 0; x < out.size(); ++x) {
    for (CubeIndex q : system.chain(x)) out[x] = std::max(out[x], avg[q]);
  }
  return LeafFunction(std::move(out));
}

LinearizationPartition linearization_partition(const DyadicOperator& op, const LeafFunction& f) {
  const auto& sys = op.system();
  const auto c = op.apply(f);
  LinearizationPartition part;
  part.sets.assign(sys.cube_count(), {});
  part.owner.assign(sys.leaf_count(), kNoCube);
  for (LeafIndex x = 0; x < sys.leaf_count(); ++x) {
    const auto chain = sys.chain(x);
    double best = 0.0;
    CubeIndex arg = kNoCube;
    // Root first, strict comparison: ties keep the larger cube.
    for (CubeIndex q : chain) {
      if (c[q] > best) {
        best = c[q];
        arg = q;
      }
    }
    if (arg != kNoCube) {
      part.owner[x] = arg;
      part.sets[arg].push_back(x);
    }
  }
  return part;
}

SequenceFunction normalize_pointwise(const DyadicSystem& system, const SequenceFunction& g,
                                     double r_conj) {
  SequenceFunction out(system);
  std::vector<double> buf(static_cast<std::size_t>(g.depth()) + 1);
  for (LeafIndex x = 0; x < system.leaf_count(); ++x) {
    for (int k = 0; k <= g.depth(); ++k) buf[k] = g.at_level(k, x);
    const double n = lr_norm(buf, r_conj);
    if (n > 0.0) {
      for (int k = 0; k <= g.depth(); ++k) out.set_at_level(k, x, buf[k] / n);
    }
  }
  return out;
}

}  // namespace twoweight
