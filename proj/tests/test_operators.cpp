#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "twoweight/operators.hpp"

using namespace twoweight;

namespace {

const DyadicSystem kLine1(1, 1);
CubeIndex idx(const DyadicSystem& s, const char* id) { return s.index_of(parse_cube_id(id)); }

}  // namespace

TEST_CASE("T on the two-leaf line") {
  DyadicOperator op(kLine1, CubeCoefficients(3, 1.0));
  auto c = op.apply(LeafFunction{2.0, 4.0});
  CHECK(c == CubeCoefficients{3.0, 2.0, 4.0});
  CHECK(DyadicOperator(kLine1, CubeCoefficients(3, 0.0)).apply(LeafFunction{2.0, 4.0}) == CubeCoefficients(3, 0.0));
  CHECK(op.apply(LeafFunction(2, 1.0)) == CubeCoefficients(3, 1.0));

  CHECK(op.apply_localized(LeafFunction{2.0, 4.0}, kLine1.root()) == c);
  CHECK(op.apply_localized(LeafFunction{2.0, 4.0}, idx(kLine1, "1:0")) == CubeCoefficients{0.0, 2.0, 0.0});
  CHECK_THROWS(op.apply_localized(LeafFunction{2.0, 4.0}, 17));
  CHECK_THROWS(op.apply(LeafFunction{1.0}));
}

TEST_CASE("adjoint, localized adjoint and S on the two-leaf line") {
  DyadicOperator op(kLine1, CubeCoefficients(3, 1.0));
  const LeafFunction one(2, 1.0);
  const CubeCoefficients a{1.0, 0.0, 3.0};
  CHECK(op.apply_adjoint(a, one) == LeafFunction{1.0, 4.0});
  CHECK(op.apply_adjoint_localized(a, one, kLine1.root()) == LeafFunction{1.0, 4.0});
  CHECK(op.apply_adjoint_localized(a, one, idx(kLine1, "1:0")) == LeafFunction{0.0, 0.0});
  CHECK(op.apply_adjoint(CubeCoefficients(3, 0.0), one) == LeafFunction(2, 0.0));
  CHECK(DyadicOperator(kLine1, CubeCoefficients(3, 0.0)).apply_adjoint(a, one) == LeafFunction(2, 0.0));

  DyadicSystem root(1, 0);
  CHECK(DyadicOperator(root, CubeCoefficients{1.0}).apply_adjoint(CubeCoefficients{1.0}, LeafFunction{1.0}) ==
        LeafFunction{1.0});

  CHECK(op.apply_scalar(LeafFunction{2.0, 4.0}) == LeafFunction{5.0, 7.0});
  DyadicSystem deep(2, 3);
  DyadicOperator unit(deep, CubeCoefficients(deep.cube_count(), 1.0));
  CHECK(unit.apply_scalar(LeafFunction(deep.leaf_count(), 1.0)) == LeafFunction(deep.leaf_count(), 4.0));
  CHECK(DyadicOperator(kLine1, CubeCoefficients(3, 0.0)).apply_scalar(LeafFunction{2.0, 4.0}) == LeafFunction(2, 0.0));
}

TEST_CASE("pointwise and integrated norms") {
  const CubeCoefficients out{3.0, 2.0, 4.0};
  CHECK(pointwise_lr(kLine1, out, CubeId{1, {1}}, kInfinity) == 4.0);
  CHECK(pointwise_lr(kLine1, out, CubeId{1, {0}}, 1.0) == 5.0);
  CHECK(pointwise_lr(kLine1, CubeCoefficients(3, 0.0), CubeId{1, {0}}, 2.5) == 0.0);
  CHECK_THROWS(pointwise_lr(kLine1, out, CubeId{0, {0}}, 2.0));

  DyadicSystem line2(1, 2);
  DyadicOperator op(line2, CubeCoefficients(7, 1.0));
  const LeafFunction one(4, 1.0);
  CHECK(norm_lp_lr(line2, op.apply(one), one, 2.0, 2.0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(norm_lp_lr(line2, CubeCoefficients(7, 0.0), one, 2.0, 2.0) == 0.0);
  CHECK(norm_lp_lr(kLine1, out, LeafFunction(2, 1.0), 2.0, kInfinity) ==
        doctest::Approx(std::sqrt(12.5)).epsilon(1e-15));
  CHECK(norm_lp(kLine1, LeafFunction(2, 1.0), LeafFunction(2, 1.0), 3.0) == doctest::Approx(1.0));
  CHECK(norm_lp(kLine1, LeafFunction{2.0, 4.0}, LeafFunction(2, 1.0), 2.0) ==
        doctest::Approx(std::sqrt(10.0)).epsilon(1e-15));
  CHECK(norm_lp(kLine1, LeafFunction(2, 0.0), LeafFunction(2, 1.0), 2.0) == 0.0);
  CHECK(norm_linf_lr(kLine1, out, LeafFunction{0.0, 1.0}, 1.0) == 7.0);
}

TEST_CASE("norms and operators agree with the naive oracle") {
  std::mt19937_64 rng(11);
  for (auto [d, L] : {std::pair{1, 4}, {2, 2}, {3, 1}}) {
    DyadicSystem sys(d, L);
    auto os = oracle::make(d, L);
    const auto map = th::lib_index(sys, os);
    for (int rep = 0; rep < 5; ++rep) {
      LeafFunction f(th::random_values(rng, sys.leaf_count(), 0.2));
      LeafFunction w(th::random_values(rng, sys.leaf_count(), 0.2));
      LeafFunction sigma(th::random_values(rng, sys.leaf_count(), 0.2));
      CubeCoefficients lambda(th::random_values(rng, sys.cube_count(), 0.2));
      DyadicOperator op(sys, lambda);
      const auto lam_o = th::to_oracle(map, lambda);
      const auto c = op.apply(pointwise_product(f, sigma));
      const auto c_o = oracle::apply(os, lam_o, f.vector(), sigma.vector());
      for (std::size_t i = 0; i < map.size(); ++i) CHECK(th::rel_close(c[map[i]], c_o[i], 1e-12));
      for (double p : {1.5, 2.0, 3.0}) {
        for (double r : {1.0, 2.0, 4.0, kInfinity}) {
          CHECK(th::rel_close(norm_lp_lr(sys, c, w, p, r), oracle::lplr(os, c_o, w.vector(), p, r), 1e-12));
        }
      }
    }
  }
}

TEST_CASE("r = 1 identity is exact") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    DyadicSystem sys(1 + rep % 2, rep % 4);
    LeafFunction f(th::random_values(rng, sys.leaf_count(), 0.2));
    LeafFunction sigma(th::random_values(rng, sys.leaf_count(), 0.2));
    LeafFunction omega(th::random_values(rng, sys.leaf_count(), 0.2));
    DyadicOperator op(sys, CubeCoefficients(th::random_values(rng, sys.cube_count())));
    const auto fs = pointwise_product(f, sigma);
    for (double p : {1.5, 2.0, 3.0}) {
      CHECK(norm_lp_lr(sys, op.apply(fs), omega, p, 1.0) == norm_lp(sys, op.apply_scalar(fs), omega, p));
    }
    const auto pw = pointwise_norm(sys, op.apply(fs), 1.0);
    CHECK(pw == op.apply_scalar(fs));
  }
}

TEST_CASE("dual pairing") {
  DyadicSystem root(1, 0);
  DyadicOperator op0(root, CubeCoefficients{1.0});
  CHECK(dual_pairing(op0, LeafFunction{1.0}, CubeCoefficients{1.0}, LeafFunction{1.0}, LeafFunction{1.0}) == 1.0);
  DyadicOperator op(kLine1, CubeCoefficients(3, 1.0));
  const LeafFunction one(2, 1.0);
  CHECK(dual_pairing(op, LeafFunction{2.0, 4.0}, CubeCoefficients(3, 0.0), one, one) == 0.0);
  CHECK(dual_pairing(op, LeafFunction{2.0, 4.0}, CubeCoefficients(3, 1.0), one, one) == 6.0);
}

TEST_CASE("adjointness, leafwise pairing and Hölder consistency") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 40; ++rep) {
    DyadicSystem sys(1 + rep % 2, rep % 4);
    LeafFunction f(th::random_values(rng, sys.leaf_count(), 0.2));
    LeafFunction sigma(th::random_values(rng, sys.leaf_count(), 0.2));
    LeafFunction omega(th::random_values(rng, sys.leaf_count(), 0.2));
    CubeCoefficients a(th::random_values(rng, sys.cube_count(), 0.3));
    DyadicOperator op(sys, CubeCoefficients(th::random_values(rng, sys.cube_count())));
    const double pairing = dual_pairing(op, f, a, sigma, omega);
    CHECK(th::rel_close(pairing, dual_pairing_leafwise(op, f, a, sigma, omega), 1e-12));
    const auto adj = op.apply_adjoint(a, omega);
    double other = 0.0;
    for (LeafIndex x = 0; x < sys.leaf_count(); ++x) other += f[x] * adj[x] * sigma[x] * sys.leaf_volume();
    CHECK(th::rel_close(pairing, other, 1e-12));
    // The sequence form of the adjoint agrees with the coefficient form.
    CHECK(th::rel_close(norm_lp(sys, op.apply_adjoint(SequenceFunction::piecewise_constant(sys, a), omega), sigma, 2.0),
                        norm_lp(sys, adj, sigma, 2.0), 1e-12));
    for (double p : {1.5, 2.0, 3.0}) {
      const double q = p / (p - 1.0);
      for (double r : {1.0, 2.0, 4.0, kInfinity}) {
        const double holder = norm_lp_lr(sys, op.apply(pointwise_product(f, sigma)), omega, p, r) *
                              norm_lp_lr(sys, a, omega, q, Exponents::conjugate(r));
        CHECK(pairing <= holder * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("positivity and localization monotonicity") {
  std::mt19937_64 rng(8);
  DyadicSystem sys(2, 2);
  DyadicOperator op(sys, CubeCoefficients(th::random_values(rng, sys.cube_count())));
  auto f = th::random_values(rng, sys.leaf_count(), 0.3);
  auto g = f;
  for (double& v : g) v += std::abs(std::sin(v));
  const auto cf = op.apply(LeafFunction(f));
  const auto cg = op.apply(LeafFunction(g));
  for (CubeIndex q = 0; q < sys.cube_count(); ++q) CHECK(cf[q] <= cg[q]);
  for (CubeIndex R = 0; R < sys.cube_count(); ++R) {
    if (R == sys.root()) continue;
    const auto inner = op.apply_localized(LeafFunction(f), R);
    const auto outer = op.apply_localized(LeafFunction(f), sys.parent(R));
    for (CubeIndex q = 0; q < sys.cube_count(); ++q) CHECK(inner[q] <= outer[q]);
  }
}

TEST_CASE("maximal function") {
  const LeafFunction one(2, 1.0);
  CHECK(maximal_function(kLine1, LeafFunction{2.0, 4.0}, one) == LeafFunction{3.0, 4.0});
  CHECK(maximal_function(kLine1, LeafFunction(2, 2.5), one) == LeafFunction(2, 2.5));
  // All the weight on the right leaf: every average there is f(right).
  CHECK(maximal_function(kLine1, LeafFunction{2.0, 4.0}, LeafFunction{0.0, 1.0}) == LeafFunction{4.0, 4.0});
}

TEST_CASE("linearization partition") {
  {
    DyadicOperator op(kLine1, CubeCoefficients{1.0, 2.0, 0.0});
    auto part = linearization_partition(op, LeafFunction(2, 1.0));
    CHECK(part.sets[0] == std::vector<LeafIndex>{1});
    CHECK(part.sets[1] == std::vector<LeafIndex>{0});
    CHECK(part.sets[2].empty());
  }
  {
    DyadicOperator op(kLine1, CubeCoefficients(3, 0.0));
    auto part = linearization_partition(op, LeafFunction(2, 1.0));
    for (auto& s : part.sets) CHECK(s.empty());
    for (auto o : part.owner) CHECK(o == kNoCube);
  }
  {
    DyadicSystem sys(2, 2);
    DyadicOperator op(sys, CubeCoefficients(sys.cube_count(), 1.0));
    auto part = linearization_partition(op, LeafFunction(sys.leaf_count(), 1.0));
    CHECK(part.sets[0].size() == sys.leaf_count());
    for (CubeIndex q = 1; q < sys.cube_count(); ++q) CHECK(part.sets[q].empty());
  }
}

TEST_CASE("linearization reproduces the chain maximum") {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 30; ++rep) {
    DyadicSystem sys(1 + rep % 2, 1 + rep % 3);
    DyadicOperator op(sys, CubeCoefficients(th::random_values(rng, sys.cube_count(), 0.3)));
    LeafFunction f(th::random_values(rng, sys.leaf_count(), 0.4));
    const auto c = op.apply(f);
    const auto part = linearization_partition(op, f);
    std::vector<int> hits(sys.leaf_count(), 0);
    for (CubeIndex q = 0; q < sys.cube_count(); ++q) {
      for (LeafIndex x : part.sets[q]) {
        ++hits[x];
        CHECK(sys.contains(q, sys.leaf_cube(x)));
        CHECK(c[q] == pointwise_lr(sys, c, x, kInfinity));
        // No strictly larger cube reaches the maximum.
        for (CubeIndex a = sys.parent(q); a != kNoCube; a = sys.parent(a)) CHECK(c[a] < c[q]);
      }
    }
    for (LeafIndex x = 0; x < sys.leaf_count(); ++x) {
      CHECK(hits[x] == (pointwise_lr(sys, c, x, kInfinity) > 0.0 ? 1 : 0));
    }
  }
}

TEST_CASE("pointwise normalization") {
  DyadicSystem root(1, 0);
  auto g0 = normalize_pointwise(root, SequenceFunction::piecewise_constant(root, CubeCoefficients{5.0}), 2.0);
  CHECK(g0.at_level(0, 0) == 1.0);
  auto z = normalize_pointwise(kLine1, SequenceFunction(kLine1), 2.0);
  for (int k = 0; k <= 1; ++k) CHECK(z.level_function(k) == LeafFunction(2, 0.0));
  auto g = normalize_pointwise(kLine1, SequenceFunction::piecewise_constant(kLine1, CubeCoefficients{3.0, 4.0, 0.0}), 2.0);
  CHECK(g.at_level(0, 0) == doctest::Approx(0.6));
  CHECK(g.at_level(1, 0) == doctest::Approx(0.8));
  CHECK(g.at_level(0, 1) == 1.0);
  CHECK(g.at_level(1, 1) == 0.0);
}

TEST_CASE("sequence functions: support, levels and norms") {
  std::mt19937_64 rng(9);
  DyadicSystem sys(2, 2);
  auto os = oracle::make(2, 2);
  std::vector<LeafFunction> comps;
  for (CubeIndex q = 0; q < sys.cube_count(); ++q) comps.emplace_back(th::random_values(rng, sys.leaf_count()));
  auto g = SequenceFunction::from_components(sys, comps);
  for (CubeIndex q = 0; q < sys.cube_count(); ++q) {
    const auto c = g.component(sys, q);
    for (LeafIndex x = 0; x < sys.leaf_count(); ++x) {
      CHECK(c[x] == (sys.contains(q, sys.leaf_cube(x)) ? comps[q][x] : 0.0));
    }
  }
  LeafFunction w(th::random_values(rng, sys.leaf_count(), 0.2));
  // Cube-indexed ℓ^r norm equals the level-indexed one.
  for (double r : {1.0, 2.0, 3.0, kInfinity}) {
    double t = 0.0;
    for (LeafIndex x = 0; x < sys.leaf_count(); ++x) {
      oracle::Vec vals;
      for (CubeIndex q = 0; q < sys.cube_count(); ++q) vals.push_back(g.component(sys, q)[x]);
      t += std::pow(oracle::lr(vals, r), 2.0) * w[x] * sys.leaf_volume();
    }
    CHECK(th::rel_close(norm_lp_lr(sys, g, w, 2.0, r), std::sqrt(t), 1e-12));
  }
  CHECK_THROWS(g.set_at_level(1, 0, -1.0));
  CHECK_THROWS(SequenceFunction::from_components(sys, {}));
}
