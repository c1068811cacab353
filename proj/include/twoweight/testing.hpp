#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twoweight/constants.hpp"
#include "twoweight/dyadic.hpp"
#include "twoweight/operators.hpp"
#include "twoweight/stopping.hpp"

namespace twoweight {

/// The data of the two-weight problem: λ, σ, ω and the exponents.
struct Instance {
  DyadicSystem system;
  CubeCoefficients lambda;
  LeafFunction sigma;
  LeafFunction omega;
  Exponents exponents;

  Instance(DyadicSystem system, CubeCoefficients lambda, LeafFunction sigma, LeafFunction omega,
           Exponents exponents);

  DyadicOperator op() const { return DyadicOperator(system, lambda); }
  friend bool operator==(const Instance& a, const Instance& b);
};

struct Budget {
  int restarts = 16;
  int iterations = 200;
  std::uint64_t seed = 0;
};

struct DirectConstant {
  double value = 0.0;
  CubeIndex witness = kNoCube;
};

struct DualConstant {
  double lower = 0.0;
  double upper = 0.0;
  CubeIndex lower_witness = kNoCube;
  std::vector<double> lower_coefficients;  // the a attaining `lower`, empty if none
  CubeIndex upper_witness = kNoCube;
};

struct NormEstimate {
  double lower = 0.0;
  std::vector<double> witness;  // f attaining `lower`
  std::optional<double> exact;  // only for p = r = 2
  bool exact_converged = true;
  double exact_residual = 0.0;
};

struct ConstantsBundle {
  double c_direct = 0.0;
  double cstar_lower = 0.0;
  double cstar_upper = 0.0;
  double ctilde_lower = 0.0;
  std::optional<double> ctilde_exact;
  bool exact_converged = true;
  CubeIndex direct_witness = kNoCube;
  CubeIndex dual_lower_witness = kNoCube;
  CubeIndex dual_upper_witness = kNoCube;
  std::vector<double> dual_lower_coefficients;
  std::vector<double> norm_witness;
};

struct VerificationReport {
  ConstantsBundle constants;
  double stein = 0.0;
  /// C_{p',r'} · 20 p p' (C + C*_upper).
  double bound = 0.0;
  std::vector<InequalityCheck> checks;
  /// Comparisons that are not theorems at the available precision.
  std::vector<InequalityCheck> notes;
  bool passed() const;
};

/// max_R ‖T_R(σ)‖_{L^p_{ℓ^r}(ω)} / σ(R)^{1/p} over σ(R) > 0.
DirectConstant direct_testing_constant(const Instance& inst);

/// Bracket for the dual testing constant: candidate lower bound and the
/// upper surrogate max_R ‖T_R(ω)‖_{L^{p'}_{ℓ^r}(σ)} / ω(R)^{1/p'}.
DualConstant dual_testing_constant(const Instance& inst, const Budget& budget = {});

/// max_R ‖S_R(ω)‖_{L^{p'}(σ)} / ω(R)^{1/p'}; the dual constant when r = 1.
DirectConstant dual_constant_via_scalar(const Instance& inst);

/// ‖T(fσ)‖_{L^p_{ℓ^r}(ω)} / ‖f‖_{L^p(σ)}, or 0 when the denominator vanishes.
double norm_ratio(const Instance& inst, const LeafFunction& f);

NormEstimate operator_norm_estimate(const Instance& inst, const Budget& budget = {});

/// Square root of the top eigenvalue of the p = r = 2 quadratic form.
NormEstimate exact_norm_p2(const Instance& inst);

VerificationReport theorem_verify(const Instance& inst, const Budget& budget = {},
                                  double tol = kDefaultTolerance);

struct ProofTrace {
  StoppingFamily f_family;
  StoppingFamily g_family;
  DerivedIndexSets sets;
  double pairing = 0.0;
  /// Q with π_F(Q) ⊆ π_G(Q), ties included.
  double sum1 = 0.0;
  /// Q with π_G(Q) ⊊ π_F(Q).
  double sum2 = 0.0;
  /// Q with π_G(Q) ⊆ π_F(Q); ties counted a second time.
  double sum2_with_ties = 0.0;
  double f_norm = 0.0;
  double g_norm = 0.0;
  double fg_norm_sum = 0.0;  // (Σ_G ‖f_G‖^p_{L^p(σ)})^{1/p}
  double gf_norm_sum = 0.0;  // (Σ_F ‖g_F‖^{p'}_{L^{p'}_{ℓ^{r'}}(ω)})^{1/p'}
  double c_direct = 0.0;
  double cstar_upper = 0.0;
  /// The six headline checks first, then the intermediate stages.
  std::vector<InequalityCheck> checks;
  bool passed() const;
};

ProofTrace proof_trace(const Instance& inst, const LeafFunction& f, const CubeCoefficients& a,
                       double tol = kDefaultTolerance);

inline constexpr std::size_t kHeadlineTraceChecks = 6;

}  // namespace twoweight
