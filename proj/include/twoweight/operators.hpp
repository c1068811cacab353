#pragma once

#include <vector>

#include "twoweight/dyadic.hpp"

namespace twoweight {

/// A cube-indexed family (g_Q) where each g_Q is leaf-constant and
/// supported in Q. Stored level by level: cubes of one level have disjoint
/// supports, so level k holds every g_Q with level(Q) = k in one leaf array.
class SequenceFunction {
 public:
  explicit SequenceFunction(const DyadicSystem& system);

  /// One leaf function per cube in canonical order; values outside Q are dropped.
  static SequenceFunction from_components(const DyadicSystem& system,
                                          const std::vector<LeafFunction>& components);
  /// g = (a_Q 1_Q).
  static SequenceFunction piecewise_constant(const DyadicSystem& system, const CubeCoefficients& a);

  int depth() const { return static_cast<int>(levels_.size()) - 1; }
  std::size_t leaf_count() const { return levels_.front().size(); }

  /// g_Q(x) where Q is the level-k cube containing x.
  double at_level(int k, LeafIndex x) const { return levels_[k][x]; }
  void set_at_level(int k, LeafIndex x, double value);
  /// Level-aggregated function Σ_{level(Q)=k} g_Q.
  LeafFunction level_function(int k) const { return LeafFunction(levels_[k]); }
  /// g_Q as a full leaf function (zero outside Q).
  LeafFunction component(const DyadicSystem& system, CubeIndex q) const;

 private:
  std::vector<std::vector<double>> levels_;
};

/// The positive dyadic operator T f = (λ_Q ⟨f⟩_Q 1_Q)_Q together with its
/// localizations, its formal adjoint and the scalar operator S = |T·|_1.
class DyadicOperator {
 public:
  DyadicOperator(DyadicSystem system, CubeCoefficients lambda);

  const DyadicSystem& system() const { return system_; }
  const CubeCoefficients& lambda() const { return lambda_; }

  CubeCoefficients apply(const LeafFunction& f) const;
  /// Coefficients vanish for Q ⊄ R.
  CubeCoefficients apply_localized(const LeafFunction& f, CubeIndex R) const;

  /// Leafwise Σ_{Q∋x} λ_Q a_Q ⟨w⟩_Q.
  LeafFunction apply_adjoint(const CubeCoefficients& a, const LeafFunction& w) const;
  /// Leafwise Σ_{Q∋x} λ_Q ⟨g_Q w⟩_Q.
  LeafFunction apply_adjoint(const SequenceFunction& g, const LeafFunction& w) const;
  LeafFunction apply_adjoint_localized(const CubeCoefficients& a, const LeafFunction& w,
                                       CubeIndex R) const;
  LeafFunction apply_adjoint_localized(const SequenceFunction& g, const LeafFunction& w,
                                       CubeIndex R) const;

  /// S f = Σ_Q λ_Q ⟨f⟩_Q 1_Q.
  LeafFunction apply_scalar(const LeafFunction& f) const;
  LeafFunction apply_scalar_localized(const LeafFunction& f, CubeIndex R) const;

 private:
  LeafFunction chain_sum(const std::vector<double>& per_cube, CubeIndex R) const;

  DyadicSystem system_;
  CubeCoefficients lambda_;
};

/// ℓ^r norm of (c_Q)_{Q ∋ x} over the ancestor chain, root first; max for r = ∞.
double pointwise_lr(const DyadicSystem& system, const CubeCoefficients& out, LeafIndex leaf, double r);
double pointwise_lr(const DyadicSystem& system, const CubeCoefficients& out, const CubeId& leaf,
                    double r);

/// ‖(c_Q 1_Q)‖_{L^p_{ℓ^r}(w)}.
double norm_lp_lr(const DyadicSystem& system, const CubeCoefficients& out, const LeafFunction& w,
                  double p, double r);
/// ‖(g_Q 1_Q)‖_{L^p_{ℓ^r}(w)} for a general sequence function.
double norm_lp_lr(const DyadicSystem& system, const SequenceFunction& g, const LeafFunction& w,
                  double p, double r);
/// L^∞_{ℓ^r}(w) norm: ess sup over leaves with positive weight.
double norm_linf_lr(const DyadicSystem& system, const CubeCoefficients& a, const LeafFunction& w,
                    double r);
double norm_lp(const DyadicSystem& system, const LeafFunction& h, const LeafFunction& w, double p);

/// Pointwise |g(x)|_{ℓ^r} of g = (a_Q 1_Q) as a leaf function.
LeafFunction pointwise_norm(const DyadicSystem& system, const CubeCoefficients& a, double r);

/// ⟨T(fσ), g⟩_ω for g = (a_Q 1_Q), summed cube by cube.
double dual_pairing(const DyadicOperator& op, const LeafFunction& f, const CubeCoefficients& a,
                    const LeafFunction& sigma, const LeafFunction& omega);
/// Same pairing evaluated as ∫ Σ_Q (T(fσ))_Q a_Q 1_Q ω, leaf by leaf.
double dual_pairing_leafwise(const DyadicOperator& op, const LeafFunction& f,
                             const CubeCoefficients& a, const LeafFunction& sigma,
                             const LeafFunction& omega);

/// Dyadic maximal function M^w f(x) = max_{Q∋x} ⟨|f|⟩^w_Q.
LeafFunction maximal_function(const DyadicSystem& system, const LeafFunction& f, const LeafFunction& w);

struct LinearizationPartition {
  /// E(Q) per cube in canonical order.
  std::vector<std::vector<LeafIndex>> sets;
  /// The cube whose set contains each leaf, or kNoCube where |Tf|_∞ = 0.
  std::vector<CubeIndex> owner;
};

/// For r = ∞: assigns each leaf with |Tf(x)|_∞ > 0 to the largest cube on its
/// chain attaining the chain maximum.
LinearizationPartition linearization_partition(const DyadicOperator& op, const LeafFunction& f);

/// Divides every component by the pointwise ℓ^{r'} norm where it is positive.
SequenceFunction normalize_pointwise(const DyadicSystem& system, const SequenceFunction& g,
                                     double r_conj);

/// ℓ^r norm of a short list of non-negative values; max for r = ∞.
double lr_norm(std::span<const double> values, double r);

}  // namespace twoweight
