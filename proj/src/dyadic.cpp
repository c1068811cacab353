#include "twoweight/dyadic.hpp"

#include <algorithm>
#include <charconv>

namespace twoweight {

namespace {

constexpr int kMaxLeafBits = 24;

std::size_t encode(std::span<const std::uint32_t> coords, int level) {
  std::size_t pos = 0;
  for (std::uint32_t c : coords) {
    pos = (pos << level) | c;
  }
  return pos;
}

}  // namespace

std::string to_string(const CubeId& cube) {
  std::string out = std::to_string(cube.level) + ":";
  for (std::size_t j = 0; j < cube.index.size(); ++j) {
    if (j > 0) out += '.';
    out += std::to_string(cube.index[j]);
  }
  return out;
}

CubeId parse_cube_id(std::string_view text) {
  auto fail = [&] { return std::invalid_argument("malformed cube id '" + std::string(text) + "'"); };
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0) throw fail();

  CubeId cube;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + colon, cube.level);
  if (ec != std::errc() || ptr != text.data() + colon || cube.level < 0) throw fail();

  std::string_view rest = text.substr(colon + 1);
  if (rest.empty()) throw fail();
  while (true) {
    const auto dot = rest.find('.');
    std::string_view part = rest.substr(0, dot);
    std::uint32_t value = 0;
    auto [p, e] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || e != std::errc() || p != part.data() + part.size()) throw fail();
    cube.index.push_back(value);
    if (dot == std::string_view::npos) break;
    rest = rest.substr(dot + 1);
  }
  return cube;
}

DyadicSystem::DyadicSystem(int dimension, int depth) : dimension_(dimension), depth_(depth) {
  if (dimension < 1) throw std::invalid_argument("dimension must be at least 1");
  if (depth < 0) throw std::invalid_argument("depth must be non-negative");
  if (static_cast<long>(dimension) * depth > kMaxLeafBits) {
    throw std::invalid_argument("system too large: depth*dimension must not exceed " +
                                std::to_string(kMaxLeafBits));
  }
  leaf_count_ = std::size_t{1} << (depth * dimension);

  auto t = std::make_shared<Tables>();
  t->level_begin.push_back(0);
  for (int k = 0; k <= depth; ++k) {
    const std::size_t count = std::size_t{1} << (k * dimension);
    t->level_begin.push_back(t->level_begin.back() + count);
    t->volume.push_back(std::ldexp(1.0, -k * dimension));
    t->level.insert(t->level.end(), count, k);
  }

  const std::size_t width = static_cast<std::size_t>(depth) + 1;
  t->chains.resize(leaf_count_ * width);
  t->by_level.assign(width, {});
  std::vector<std::vector<std::size_t>> fill(width);
  for (int k = 0; k <= depth; ++k) {
    t->by_level[k].resize(leaf_count_);
    fill[k].assign(std::size_t{1} << (k * dimension), 0);
  }

  std::vector<std::uint32_t> coords(dimension);
  std::vector<std::uint32_t> shifted(dimension);
  const std::uint32_t mask = (depth == 0) ? 0u : ((1u << depth) - 1u);
  for (LeafIndex x = 0; x < leaf_count_; ++x) {
    for (int j = 0; j < dimension; ++j) {
      coords[j] = static_cast<std::uint32_t>((x >> ((dimension - 1 - j) * depth)) & mask);
    }
    for (int k = 0; k <= depth; ++k) {
      for (int j = 0; j < dimension; ++j) shifted[j] = coords[j] >> (depth - k);
      const std::size_t pos = encode(shifted, k);
      t->chains[x * width + k] = t->level_begin[k] + pos;
      const std::size_t per_cube = std::size_t{1} << ((depth - k) * dimension);
      t->by_level[k][pos * per_cube + fill[k][pos]++] = x;
    }
  }
  tables_ = std::move(t);
}

std::size_t DyadicSystem::position(const CubeId& cube) const {
  return encode(cube.index, cube.level);
}

bool DyadicSystem::is_member(const CubeId& cube) const {
  if (cube.level < 0 || cube.level > depth_) return false;
  if (cube.index.size() != static_cast<std::size_t>(dimension_)) return false;
  for (std::uint32_t c : cube.index) {
    if (c >= (std::uint64_t{1} << cube.level)) return false;
  }
  return true;
}

CubeIndex DyadicSystem::index_of(const CubeId& cube) const {
  if (!is_member(cube)) throw std::out_of_range("unknown cube " + to_string(cube));
  return level_begin(cube.level) + position(cube);
}

CubeId DyadicSystem::cube(CubeIndex q) const {
  if (q >= cube_count()) throw std::out_of_range("cube index out of range");
  CubeId out;
  out.level = level(q);
  out.index.resize(dimension_);
  std::size_t pos = q - level_begin(out.level);
  const std::size_t mask = (std::size_t{1} << out.level) - 1;
  for (int j = dimension_ - 1; j >= 0; --j) {
    out.index[j] = static_cast<std::uint32_t>(pos & mask);
    pos >>= out.level;
  }
  return out;
}

std::span<const LeafIndex> DyadicSystem::leaves(CubeIndex q) const {
  const int k = level(q);
  const std::size_t per_cube = std::size_t{1} << ((depth_ - k) * dimension_);
  const std::size_t pos = q - level_begin(k);
  return std::span<const LeafIndex>(tables_->by_level[k]).subspan(pos * per_cube, per_cube);
}

std::span<const CubeIndex> DyadicSystem::chain(LeafIndex x) const {
  const std::size_t width = static_cast<std::size_t>(depth_) + 1;
  return std::span<const CubeIndex>(tables_->chains).subspan(x * width, width);
}

CubeIndex DyadicSystem::ancestor(CubeIndex q, int lvl) const {
  if (lvl < 0 || lvl > level(q)) throw std::out_of_range("ancestor level out of range");
  return chain(leaves(q).front())[lvl];
}

CubeIndex DyadicSystem::parent(CubeIndex q) const {
  if (level(q) == 0) return kNoCube;
  return ancestor(q, level(q) - 1);
}

std::vector<CubeIndex> DyadicSystem::children(CubeIndex q) const {
  if (is_leaf(q)) return {};
  const CubeId parent_id = cube(q);
  CubeId child{parent_id.level + 1, std::vector<std::uint32_t>(dimension_)};
  std::vector<CubeIndex> out;
  out.reserve(std::size_t{1} << dimension_);
  for (std::uint32_t bits = 0; bits < (1u << dimension_); ++bits) {
    for (int j = 0; j < dimension_; ++j) {
      child.index[j] = 2 * parent_id.index[j] + ((bits >> (dimension_ - 1 - j)) & 1u);
    }
    out.push_back(index_of(child));
  }
  return out;
}

bool DyadicSystem::contains(CubeIndex outer, CubeIndex inner) const {
  const int lo = level(outer);
  if (level(inner) < lo) return false;
  return ancestor(inner, lo) == outer;
}

void require_shape(const DyadicSystem& system, const LeafFunction& f) {
  if (f.size() != system.leaf_count()) {
    throw std::invalid_argument("leaf function has " + std::to_string(f.size()) +
                                " values, system has " + std::to_string(system.leaf_count()) +
                                " leaves");
  }
}

void require_shape(const DyadicSystem& system, const CubeCoefficients& c) {
  if (c.size() != system.cube_count()) {
    throw std::invalid_argument("cube coefficients have " + std::to_string(c.size()) +
                                " values, system has " + std::to_string(system.cube_count()) +
                                " cubes");
  }
}

Exponents::Exponents(double p, double r) : p_(p), r_(r) {
  if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("p must lie in (1, inf)");
  if (!(r >= 1.0)) throw std::invalid_argument("r must lie in [1, inf]");
}

double Exponents::conjugate(double s) {
  if (s == 1.0) return kInfinity;
  if (std::isinf(s)) return 1.0;
  return s / (s - 1.0);
}

std::vector<CubeId> leaf_cells(const DyadicSystem& system) {
  std::vector<CubeId> out;
  out.reserve(system.leaf_count());
  for (LeafIndex x = 0; x < system.leaf_count(); ++x) out.push_back(system.cube(system.leaf_cube(x)));
  return out;
}

double lebesgue_measure(const DyadicSystem& system, const CubeId& cube) {
  return system.volume(system.index_of(cube));
}

double weight_mass(const DyadicSystem& system, const LeafFunction& w, const CubeId& cube) {
  require_shape(system, w);
  const CubeIndex q = system.index_of(cube);
  const double vol = system.leaf_volume();
  double sum = 0.0;
  for (LeafIndex x : system.leaves(q)) sum += w[x] * vol;
  return sum;
}

std::vector<double> weight_masses(const DyadicSystem& system, std::span<const double> w) {
  std::vector<double> mass(system.cube_count(), 0.0);
  const double vol = system.leaf_volume();
  for (LeafIndex x = 0; x < system.leaf_count(); ++x) {
    const double m = w[x] * vol;
    for (CubeIndex q : system.chain(x)) mass[q] += m;
  }
  return mass;
}

double average(const DyadicSystem& system, const LeafFunction& f, const CubeId& cube) {
  return weight_mass(system, f, cube) / lebesgue_measure(system, cube);
}

std::vector<double> averages(const DyadicSystem& system, std::span<const double> f) {
  auto out = weight_masses(system, f);
  for (CubeIndex q = 0; q < out.size(); ++q) out[q] /= system.volume(q);
  return out;
}

double weighted_average(const DyadicSystem& system, const LeafFunction& f, const LeafFunction& w,
                        const CubeId& cube) {
  const double wq = weight_mass(system, w, cube);
  if (wq == 0.0) return 0.0;
  return weight_mass(system, pointwise_product(f, w), cube) / wq;
}

std::vector<double> weighted_averages(const DyadicSystem& system, std::span<const double> f,
                                      std::span<const double> w) {
  std::vector<double> fw(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) fw[x] = f[x] * w[x];
  auto num = weight_masses(system, fw);
  const auto den = weight_masses(system, w);
  for (CubeIndex q = 0; q < num.size(); ++q) num[q] = den[q] == 0.0 ? 0.0 : num[q] / den[q];
  return num;
}

LeafFunction change_of_weight(const LeafFunction& u, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("p must exceed 1");
  std::vector<double> out(u.size());
  const double e = -1.0 / (p - 1.0);
  for (std::size_t x = 0; x < u.size(); ++x) {
    if (!(u[x] > 0.0)) throw std::invalid_argument("change of weight needs a positive u");
    out[x] = std::pow(u[x], e);
  }
  return LeafFunction(std::move(out));
}

LeafFunction pointwise_product(const LeafFunction& a, const LeafFunction& b) {
  if (a.size() != b.size()) throw std::invalid_argument("leaf functions differ in length");
  std::vector<double> out(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) out[x] = a[x] * b[x];
  return LeafFunction(std::move(out));
}

}  // namespace twoweight
