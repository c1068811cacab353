#pragma once

#include <string>
#include <vector>

#include "twoweight/dyadic.hpp"
#include "twoweight/operators.hpp"
#include "twoweight/stopping.hpp"

namespace twoweight {

/// Relative tolerance for inequalities that are theorems.
inline constexpr double kDefaultTolerance = 1e-9;
/// Tolerance for quantities that agree exactly up to rounding.
inline constexpr double kExactTolerance = 1e-12;

/// One side-by-side inequality lhs ≤ rhs, never just a boolean.
struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  bool holds = true;
  double slack = 0.0;  // rhs - lhs
};

/// holds ⇔ lhs ≤ rhs (1 + tol).
InequalityCheck make_check(std::string name, double lhs, double rhs, double constant,
                           double tol = kDefaultTolerance);

/// Constant in Stein's inequality: (p'/r')^{1/r'} if p' ≥ r', else (p/r)^{1/r}.
double stein_constant(double p_conj, double r_conj);

/// ‖(⟨g_Q⟩^ω_Q 1_Q)‖_{L^{p'}_{ℓ^{r'}}(ω)} ≤ C_{p',r'} ‖(g_Q 1_Q)‖_{L^{p'}_{ℓ^{r'}}(ω)}.
InequalityCheck verify_stein(const DyadicSystem& system, const SequenceFunction& g,
                             const LeafFunction& omega, double p_conj, double r_conj,
                             double tol = kDefaultTolerance);

/// (⟨g_Q⟩^ω_Q)_Q: conditional expectations of each component on its own cube.
CubeCoefficients conditional_averages(const DyadicSystem& system, const SequenceFunction& g,
                                      const LeafFunction& omega);

enum class DoobMode { Scalar, L1, LInfinity };

/// Scalar mode: ‖(E_w(f|F_k))_k‖_{L^p_{ℓ^∞}(w)} ≤ p' ‖f‖_{L^p(w)}, where F_k is
/// the level-k dyadic σ-algebra under the measure w.
InequalityCheck verify_doob(const DyadicSystem& system, const LeafFunction& f, const LeafFunction& w,
                            double p, double tol = kDefaultTolerance);
/// Sequence modes over levels k = 0..L: constant p' for ℓ^∞, p for ℓ^1.
InequalityCheck verify_doob(const DyadicSystem& system, const std::vector<LeafFunction>& levels,
                            const LeafFunction& w, double p, DoobMode mode,
                            double tol = kDefaultTolerance);

/// E_w(h | F_k) as a leaf function.
LeafFunction conditional_expectation(const DyadicSystem& system, const LeafFunction& h,
                                     const LeafFunction& w, int level);

struct CarlesonCheck {
  bool preconditions_hold = true;
  std::string precondition_failure;
  InequalityCheck inequality;
};

/// (Σ_F (⟨|f|⟩^σ_F)^p σ(F))^{1/p} ≤ 2^{1/p} p' ‖f‖_{L^p(σ)}, after asserting
/// that the residuals are disjoint, lie in their cubes and carry half the mass.
CarlesonCheck verify_carleson(const DyadicSystem& system, const StoppingFamily& family,
                              const LeafFunction& f, const LeafFunction& sigma, double p,
                              double tol = kDefaultTolerance);

}  // namespace twoweight
