#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "twoweight/dyadic.hpp"

namespace twoweight {

/// A principal-cube family: Q0 plus, recursively, the maximal subcubes of
/// each member where the stopping condition fires.
struct StoppingFamily {
  struct Member {
    CubeIndex cube = kNoCube;
    int generation = 0;
    std::vector<CubeIndex> children;   // ch(F), canonical order
    std::vector<LeafIndex> residual;   // E(F) = F minus the children, lexicographic
  };

  std::vector<Member> members;          // generation by generation
  std::vector<CubeIndex> parent;        // π(Q) for every cube Q
  std::vector<std::ptrdiff_t> slot;     // member position per cube, -1 if not a member

  bool is_member(CubeIndex q) const { return slot[q] >= 0; }
  const Member& member(CubeIndex q) const;
};

/// ch_F(F) = maximal F' ⊊ F with ⟨f⟩^σ_{F'} > 2⟨f⟩^σ_F.
StoppingFamily build_f_stopping(const DyadicSystem& system, const LeafFunction& f,
                                const LeafFunction& sigma);

/// ch_G(G) = maximal G' ⊊ G with ‖(a_Q)_{Q⊇G'}‖_{ℓ^{r'}} > 2⟨|g|_{ℓ^{r'}}⟩^ω_G.
StoppingFamily build_g_stopping(const DyadicSystem& system, const CubeCoefficients& a,
                                const LeafFunction& omega, double r_conj);

struct PropertyCheck {
  std::string name;
  bool holds = true;
  /// Smallest rhs - lhs over all tested instances; 0 for combinatorial properties.
  double worst_slack = 0.0;
  std::size_t violations = 0;
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;
  bool all_hold() const;
};

/// (a1) partition, (a2) disjoint residuals, (a3) σ(E_F) ≥ σ(F)/2,
/// (a4) ⟨f⟩^σ_Q ≤ 2⟨f⟩^σ_{π_F(Q)}.
PropertyReport verify_properties_a(const DyadicSystem& system, const StoppingFamily& family,
                                   const LeafFunction& f, const LeafFunction& sigma,
                                   double tol = 1e-9);

/// (b1)-(b3) as for the f-side; (b4) chain norm ≤ 2⟨|g|⟩^ω_{π_G(R)}; (b5) the
/// L^∞_{ℓ^{r'}}(ω) norm of the components with π_G(Q)=G is ≤ 2⟨|g|⟩^ω_G.
PropertyReport verify_properties_b(const DyadicSystem& system, const StoppingFamily& family,
                                   const CubeCoefficients& a, const LeafFunction& omega,
                                   double r_conj, double tol = 1e-9);

/// Index sets coupling the two families.
struct DerivedIndexSets {
  /// ch*_G(G) per G-member slot: G' ∈ ch_G(G) with some F-member between G' and G.
  std::vector<std::vector<CubeIndex>> chstar_g;
  /// ch*_F(F) per F-member slot: F' ∈ ch_F(F) with some G-member between F' and F.
  std::vector<std::vector<CubeIndex>> chstar_f;
  /// I(F) per F-member slot: Q with π_F(Q) = F and π_G(Q) ⊆ F.
  std::vector<std::vector<CubeIndex>> index_f;
  /// I(F, F') for F' ∈ ch_F(F): Q ∈ I(F) with Q ⊋ F'.
  std::map<std::pair<CubeIndex, CubeIndex>, std::vector<CubeIndex>> index_f_child;
};

DerivedIndexSets derive_index_sets(const DyadicSystem& system, const StoppingFamily& f_family,
                                   const StoppingFamily& g_family);

/// f_G = f 1_{E_G(G)} + Σ_{G'∈ch*_G(G)} ⟨f⟩^σ_{G'} 1_{G'}.
LeafFunction build_f_g(const DyadicSystem& system, const LeafFunction& f, const LeafFunction& sigma,
                       const StoppingFamily& g_family, const DerivedIndexSets& sets, CubeIndex G);

/// g_F: a_Q kept for Q ∈ I(F), zero elsewhere.
CubeCoefficients build_g_f(const DyadicSystem& system, const CubeCoefficients& a,
                           const StoppingFamily& f_family, const DerivedIndexSets& sets, CubeIndex F);

}  // namespace twoweight
