#include "twoweight/stopping.hpp"

#include <algorithm>
#include <deque>

#include "twoweight/operators.hpp"

namespace twoweight {

namespace {

// Builds the family for "Q stops inside F iff value[Q] > threshold[F]".
template <class ThresholdFn>
StoppingFamily build_family(const DyadicSystem& system, const std::vector<double>& value,
                            ThresholdFn threshold) {
  StoppingFamily fam;
  fam.slot.assign(system.cube_count(), -1);
  std::vector<char> covered(system.leaf_count(), 0);

  std::deque<std::pair<CubeIndex, int>> queue{{system.root(), 0}};
  while (!queue.empty()) {
    auto [F, gen] = queue.front();
    queue.pop_front();
    StoppingFamily::Member m;
    m.cube = F;
    m.generation = gen;
    const double t = threshold(F);

    std::vector<CubeIndex> stack = system.children(F);
    while (!stack.empty()) {
      const CubeIndex q = stack.back();
      stack.pop_back();
      if (value[q] > t) {
        m.children.push_back(q);
      } else {
        auto kids = system.children(q);
        stack.insert(stack.end(), kids.begin(), kids.end());
      }
    }
    std::sort(m.children.begin(), m.children.end());

    for (CubeIndex c : m.children) {
      for (LeafIndex x : system.leaves(c)) covered[x] = 1;
    }
    for (LeafIndex x : system.leaves(F)) {
      if (!covered[x]) m.residual.push_back(x);
    }
    for (CubeIndex c : m.children) {
      for (LeafIndex x : system.leaves(c)) covered[x] = 0;
      queue.emplace_back(c, gen + 1);
    }
    fam.slot[F] = static_cast<std::ptrdiff_t>(fam.members.size());
    fam.members.push_back(std::move(m));
  }

  fam.parent.assign(system.cube_count(), kNoCube);
  for (CubeIndex q = 0; q < system.cube_count(); ++q) {
    CubeIndex up = q;
    while (fam.slot[up] < 0) up = system.parent(up);
    fam.parent[q] = up;
  }
  return fam;
}

// ‖(a_Q)_{Q ⊇ R}‖_{ℓ^r} for every cube R.
std::vector<double> chain_norms(const DyadicSystem& system, const CubeCoefficients& a, double r) {
  std::vector<double> out(system.cube_count());
  std::vector<double> buf;
  for (CubeIndex q = 0; q < system.cube_count(); ++q) {
    const auto chain = system.chain(system.leaves(q).front()).first(system.level(q) + 1);
    buf.clear();
    for (CubeIndex c : chain) buf.push_back(a[c]);
    out[q] = lr_norm(buf, r);
  }
  return out;
}

void record(PropertyCheck& check, double lhs, double rhs, double tol) {
  check.worst_slack = std::min(check.worst_slack, rhs - lhs);
  if (!(lhs <= rhs * (1.0 + tol))) {
    check.holds = false;
    ++check.violations;
  }
}

void fail(PropertyCheck& check) {
  check.holds = false;
  ++check.violations;
}

PropertyCheck inequality(std::string name) {
  PropertyCheck c;
  c.name = std::move(name);
  c.worst_slack = kInfinity;
  return c;
}

// Shared (x1)-(x3): partition, disjoint residuals, half the mass in the residual.
void check_structure(const DyadicSystem& system, const StoppingFamily& fam,
                     const std::vector<double>& mass, const LeafFunction& w, const std::string& tag,
                     double tol, PropertyReport& report) {
  PropertyCheck partition{tag + "1: children and residual partition each member"};
  PropertyCheck disjoint{tag + "2: residual sets pairwise disjoint"};
  PropertyCheck half = inequality(tag + "3: residual carries half the weight");

  std::vector<int> count(system.leaf_count(), 0);
  std::vector<int> seen(system.leaf_count(), 0);
  const double vol = system.leaf_volume();
  for (const auto& m : fam.members) {
    bool ok = true;
    for (std::size_t i = 0; i < m.children.size(); ++i) {
      const CubeIndex c = m.children[i];
      if (c == m.cube || !system.contains(m.cube, c)) ok = false;
      for (LeafIndex x : system.leaves(c)) ++count[x];
    }
    for (LeafIndex x : m.residual) {
      ++count[x];
      ++seen[x];
    }
    std::size_t touched = 0;
    for (LeafIndex x : system.leaves(m.cube)) {
      if (count[x] != 1) ok = false;
      touched += static_cast<std::size_t>(count[x]);
      count[x] = 0;
    }
    // Anything counted outside the member would be left non-zero.
    std::size_t expected = 0;
    for (CubeIndex c : m.children) expected += system.leaves(c).size();
    expected += m.residual.size();
    if (touched != expected) ok = false;
    if (!ok) fail(partition);
    for (CubeIndex c : m.children) {
      for (LeafIndex x : system.leaves(c)) count[x] = 0;
    }
    for (LeafIndex x : m.residual) count[x] = 0;

    double residual_mass = 0.0;
    for (LeafIndex x : m.residual) residual_mass += w[x] * vol;
    record(half, 0.5 * mass[m.cube], residual_mass, tol);
  }
  for (int s : seen) {
    if (s > 1) fail(disjoint);
  }
  report.checks.push_back(partition);
  report.checks.push_back(disjoint);
  report.checks.push_back(half);
}

}  // namespace

const StoppingFamily::Member& StoppingFamily::member(CubeIndex q) const {
  if (q >= slot.size() || slot[q] < 0) throw std::invalid_argument("cube is not a family member");
  return members[static_cast<std::size_t>(slot[q])];
}

bool PropertyReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.holds; });
}

StoppingFamily build_f_stopping(const DyadicSystem& system, const LeafFunction& f,
                                const LeafFunction& sigma) {
  require_shape(system, f);
  require_shape(system, sigma);
  const auto avg = weighted_averages(system, f.values(), sigma.values());
  return build_family(system, avg, [&](CubeIndex F) { return 2.0 * avg[F]; });
}

StoppingFamily build_g_stopping(const DyadicSystem& system, const CubeCoefficients& a,
                                const LeafFunction& omega, double r_conj) {
  require_shape(system, a);
  require_shape(system, omega);
  const auto norms = chain_norms(system, a, r_conj);
  const auto g_abs = pointwise_norm(system, a, r_conj);
  const auto avg = weighted_averages(system, g_abs.values(), omega.values());
  return build_family(system, norms, [&](CubeIndex G) { return 2.0 * avg[G]; });
}

PropertyReport verify_properties_a(const DyadicSystem& system, const StoppingFamily& family,
                                   const LeafFunction& f, const LeafFunction& sigma, double tol) {
  require_shape(system, f);
  require_shape(system, sigma);
  PropertyReport report;
  const auto mass = weight_masses(system, sigma.values());
  check_structure(system, family, mass, sigma, "a", tol, report);

  PropertyCheck a4 = inequality("a4: average at most twice the stopping parent's");
  const auto avg = weighted_averages(system, f.values(), sigma.values());
  for (CubeIndex q = 0; q < system.cube_count(); ++q) {
    record(a4, avg[q], 2.0 * avg[family.parent[q]], tol);
  }
  report.checks.push_back(a4);
  return report;
}

PropertyReport verify_properties_b(const DyadicSystem& system, const StoppingFamily& family,
                                   const CubeCoefficients& a, const LeafFunction& omega,
                                   double r_conj, double tol) {
  require_shape(system, a);
  require_shape(system, omega);
  PropertyReport report;
  const auto mass = weight_masses(system, omega.values());
  check_structure(system, family, mass, omega, "b", tol, report);

  const auto norms = chain_norms(system, a, r_conj);
  const auto g_abs = pointwise_norm(system, a, r_conj);
  const auto avg = weighted_averages(system, g_abs.values(), omega.values());

  // A member of zero ω-mass has average 0 by convention while its own chain
  // norm may be positive; such cubes are ω-null and are exempt.
  PropertyCheck b4 = inequality("b4: chain norm at most twice the stopping parent's average");
  for (CubeIndex R = 0; R < system.cube_count(); ++R) {
    const CubeIndex G = family.parent[R];
    if (mass[G] == 0.0) continue;
    record(b4, norms[R], 2.0 * avg[G], tol);
  }
  report.checks.push_back(b4);

  PropertyCheck b5 = inequality("b5: L-infinity norm of the components stopping at G");
  std::vector<double> buf;
  for (const auto& m : family.members) {
    const CubeIndex G = m.cube;
    for (LeafIndex x : system.leaves(G)) {
      if (!(omega[x] > 0.0)) continue;
      buf.clear();
      for (CubeIndex q : system.chain(x)) {
        if (family.parent[q] == G) buf.push_back(a[q]);
      }
      if (buf.empty()) continue;
      record(b5, lr_norm(buf, r_conj), 2.0 * avg[G], tol);
    }
  }
  report.checks.push_back(b5);
  return report;
}

DerivedIndexSets derive_index_sets(const DyadicSystem& system, const StoppingFamily& f_family,
                                   const StoppingFamily& g_family) {
  DerivedIndexSets sets;
  sets.chstar_g.resize(g_family.members.size());
  for (std::size_t i = 0; i < g_family.members.size(); ++i) {
    const auto& G = g_family.members[i];
    for (CubeIndex child : G.children) {
      if (system.contains(G.cube, f_family.parent[child])) sets.chstar_g[i].push_back(child);
    }
  }

  sets.chstar_f.resize(f_family.members.size());
  sets.index_f.resize(f_family.members.size());
  for (std::size_t i = 0; i < f_family.members.size(); ++i) {
    const auto& F = f_family.members[i];
    for (CubeIndex child : F.children) {
      if (system.contains(F.cube, g_family.parent[child])) sets.chstar_f[i].push_back(child);
    }
  }
  for (CubeIndex q = 0; q < system.cube_count(); ++q) {
    const CubeIndex F = f_family.parent[q];
    if (system.contains(F, g_family.parent[q])) {
      sets.index_f[static_cast<std::size_t>(f_family.slot[F])].push_back(q);
    }
  }
  for (std::size_t i = 0; i < f_family.members.size(); ++i) {
    const auto& F = f_family.members[i];
    for (CubeIndex child : F.children) {
      auto& bucket = sets.index_f_child[{F.cube, child}];
      for (CubeIndex q : sets.index_f[i]) {
        if (q != child && system.contains(q, child)) bucket.push_back(q);
      }
    }
  }
  return sets;
}

LeafFunction build_f_g(const DyadicSystem& system, const LeafFunction& f, const LeafFunction& sigma,
                       const StoppingFamily& g_family, const DerivedIndexSets& sets, CubeIndex G) {
  require_shape(system, f);
  require_shape(system, sigma);
  const auto& member = g_family.member(G);
  std::vector<double> out(system.leaf_count(), 0.0);
  for (LeafIndex x : member.residual) out[x] = f[x];
  const auto avg = weighted_averages(system, f.values(), sigma.values());
  for (CubeIndex child : sets.chstar_g[static_cast<std::size_t>(g_family.slot[G])]) {
    for (LeafIndex x : system.leaves(child)) out[x] = avg[child];
  }
  return LeafFunction(std::move(out));
}

CubeCoefficients build_g_f(const DyadicSystem& system, const CubeCoefficients& a,
                           const StoppingFamily& f_family, const DerivedIndexSets& sets, CubeIndex F) {
  require_shape(system, a);
  f_family.member(F);
  std::vector<double> out(system.cube_count(), 0.0);
  for (CubeIndex q : sets.index_f[static_cast<std::size_t>(f_family.slot[F])]) out[q] = a[q];
  return CubeCoefficients(std::move(out));
}

}  // namespace twoweight
