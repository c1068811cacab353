#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace twoweight {

/// Position of a cube in the canonical order of D: by level, then
/// lexicographically by index vector (first coordinate most significant).
using CubeIndex = std::size_t;
/// Position of a finest-level cell in lexicographic order.
using LeafIndex = std::size_t;

inline constexpr CubeIndex kNoCube = std::numeric_limits<CubeIndex>::max();
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A dyadic cube 2^{-level}([0,1)^d + index) inside the unit cube.
struct CubeId {
  int level = 0;
  std::vector<std::uint32_t> index;

  friend bool operator==(const CubeId&, const CubeId&) = default;
};

/// "k:i0.i1...i{d-1}", the key format used in instance files.
std::string to_string(const CubeId& cube);
CubeId parse_cube_id(std::string_view text);

/// Finite dyadic system: every dyadic subcube of [0,1)^d down to level
/// `depth`. Immutable; copies share the lookup tables.
class DyadicSystem {
 public:
  DyadicSystem(int dimension, int depth);

  int dimension() const { return dimension_; }
  int depth() const { return depth_; }
  std::size_t cube_count() const { return tables_->level_begin.back(); }
  std::size_t leaf_count() const { return leaf_count_; }

  CubeIndex root() const { return 0; }
  CubeIndex level_begin(int level) const { return tables_->level_begin[level]; }
  CubeIndex level_end(int level) const { return tables_->level_begin[level + 1]; }

  /// Throws std::out_of_range for cubes outside the system.
  CubeIndex index_of(const CubeId& cube) const;
  CubeId cube(CubeIndex q) const;
  bool is_member(const CubeId& cube) const;

  int level(CubeIndex q) const { return tables_->level[q]; }
  CubeIndex parent(CubeIndex q) const;
  std::vector<CubeIndex> children(CubeIndex q) const;
  CubeIndex ancestor(CubeIndex q, int level) const;
  /// outer ⊇ inner.
  bool contains(CubeIndex outer, CubeIndex inner) const;
  bool is_leaf(CubeIndex q) const { return level(q) == depth_; }

  /// Leaves inside q, lexicographic.
  std::span<const LeafIndex> leaves(CubeIndex q) const;
  /// Ancestors of a leaf, root first; entry k is the level-k cube.
  std::span<const CubeIndex> chain(LeafIndex x) const;
  CubeIndex leaf_cube(LeafIndex x) const { return level_begin(depth_) + x; }

  double volume(CubeIndex q) const { return tables_->volume[level(q)]; }
  double leaf_volume() const { return tables_->volume[depth_]; }

 private:
  struct Tables {
    std::vector<CubeIndex> level_begin;
    std::vector<int> level;
    std::vector<double> volume;
    std::vector<CubeIndex> chains;                  // leaf_count × (depth+1)
    std::vector<std::vector<LeafIndex>> by_level;   // per level: leaves grouped by cube
  };

  std::size_t position(const CubeId& cube) const;

  int dimension_;
  int depth_;
  std::size_t leaf_count_;
  std::shared_ptr<const Tables> tables_;
};

/// Non-negative values with a tag distinguishing leaf-indexed from
/// cube-indexed data.
template <class Tag>
class NonNegativeValues {
 public:
  NonNegativeValues() = default;
  explicit NonNegativeValues(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("values must be finite and non-negative");
      }
    }
  }
  NonNegativeValues(std::initializer_list<double> values)
      : NonNegativeValues(std::vector<double>(values)) {}
  NonNegativeValues(std::size_t n, double value) : NonNegativeValues(std::vector<double>(n, value)) {}

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& vector() const { return values_; }

  friend bool operator==(const NonNegativeValues&, const NonNegativeValues&) = default;

 private:
  std::vector<double> values_;
};

struct LeafTag {};
struct CubeTag {};

/// Density constant on each finest-level cell (f, σ, ω, u).
using LeafFunction = NonNegativeValues<LeafTag>;
/// One value per cube in canonical order (λ_Q, a_Q, operator outputs).
using CubeCoefficients = NonNegativeValues<CubeTag>;

void require_shape(const DyadicSystem& system, const LeafFunction& f);
void require_shape(const DyadicSystem& system, const CubeCoefficients& c);

/// Exponents p ∈ (1,∞) and r ∈ [1,∞]; r = kInfinity means the sup norm.
class Exponents {
 public:
  Exponents(double p, double r);

  double p() const { return p_; }
  double r() const { return r_; }
  double p_conj() const { return p_ / (p_ - 1.0); }
  double r_conj() const { return conjugate(r_); }

  static double conjugate(double s);

 private:
  double p_;
  double r_;
};

std::vector<CubeId> leaf_cells(const DyadicSystem& system);
double lebesgue_measure(const DyadicSystem& system, const CubeId& cube);

/// ∫_Q w, summed over the leaves of Q in lexicographic order.
double weight_mass(const DyadicSystem& system, const LeafFunction& w, const CubeId& cube);
/// weight_mass for every cube at once; bitwise equal to the single-cube form.
std::vector<double> weight_masses(const DyadicSystem& system, std::span<const double> w);

double average(const DyadicSystem& system, const LeafFunction& f, const CubeId& cube);
std::vector<double> averages(const DyadicSystem& system, std::span<const double> f);

/// (∫_Q f w) / w(Q), and 0 when w(Q) = 0.
double weighted_average(const DyadicSystem& system, const LeafFunction& f, const LeafFunction& w,
                        const CubeId& cube);
std::vector<double> weighted_averages(const DyadicSystem& system, std::span<const double> f,
                                      std::span<const double> w);

/// σ = u^{-1/(p-1)} leafwise. Throws on a non-positive leaf value.
LeafFunction change_of_weight(const LeafFunction& u, double p);

LeafFunction pointwise_product(const LeafFunction& a, const LeafFunction& b);

}  // namespace twoweight
