#include "twoweight/instance_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "twoweight/generate.hpp"

namespace twoweight {

namespace {

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  return j.get<double>();
}

double exponent(const Json& j, const char* what) {
  if (j.is_string()) {
    if (j.get<std::string>() != "inf") throw ParseError(std::string(what) + ": only \"inf\" is allowed as a string");
    return kInfinity;
  }
  return number(j, what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::vector<double> leaf_array(const DyadicSystem& system, const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  if (j.size() != system.leaf_count()) {
    throw ParseError(std::string(what) + " has " + std::to_string(j.size()) + " entries, expected " +
                     std::to_string(system.leaf_count()));
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    const double x = number(v, what);
    if (!(x >= 0.0) || !std::isfinite(x)) throw ParseError(std::string(what) + " entries must be finite and >= 0");
    out.push_back(x);
  }
  return out;
}

}  // namespace

Json instance_to_json(const Instance& inst) {
  Json j;
  j["dimension"] = inst.system.dimension();
  j["depth"] = inst.system.depth();
  j["p"] = inst.exponents.p();
  if (std::isinf(inst.exponents.r())) {
    j["r"] = "inf";
  } else {
    j["r"] = inst.exponents.r();
  }
  j["lambda"] = cube_coefficients_to_json(inst.system, inst.lambda);
  j["sigma"] = inst.sigma.vector();
  j["omega"] = inst.omega.vector();
  return j;
}

Instance instance_from_json(const Json& j) {
  const Json& dj = field(j, "dimension");
  const Json& lj = field(j, "depth");
  if (!dj.is_number_integer() || !lj.is_number_integer()) {
    throw ParseError("dimension and depth must be integers");
  }
  const auto d = dj.get<long long>();
  const auto depth = lj.get<long long>();
  if (d < 1 || depth < 0 || d * depth > 24) throw ParseError("unsupported dimension/depth");
  const double p = exponent(field(j, "p"), "p");
  const double r = exponent(field(j, "r"), "r");
  try {
    Exponents exps(p, r);
    DyadicSystem sys(static_cast<int>(d), static_cast<int>(depth));
    auto lambda = cube_coefficients_from_json(sys, j, "lambda");
    LeafFunction sigma(leaf_array(sys, field(j, "sigma"), "sigma"));
    LeafFunction omega(leaf_array(sys, field(j, "omega"), "omega"));
    return Instance(sys, std::move(lambda), std::move(sigma), std::move(omega), exps);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
}

LeafFunction leaf_function_from_json(const DyadicSystem& system, const Json& j, const char* key) {
  return LeafFunction(leaf_array(system, field(j, key), key));
}

CubeCoefficients cube_coefficients_from_json(const DyadicSystem& system, const Json& j, const char* key) {
  const Json& m = field(j, key);
  std::vector<double> out(system.cube_count(), 0.0);
  if (m.is_array()) {
    if (m.size() != system.cube_count()) throw ParseError(std::string(key) + " array has the wrong length");
    for (std::size_t q = 0; q < m.size(); ++q) out[q] = number(m[q], key);
  } else if (m.is_object()) {
    for (auto it = m.begin(); it != m.end(); ++it) {
      CubeIndex q;
      try {
        q = system.index_of(parse_cube_id(it.key()));
      } catch (const std::exception&) {
        throw ParseError("cube \"" + it.key() + "\" is not in the system");
      }
      out[q] = number(it.value(), key);
    }
  } else {
    throw ParseError(std::string(key) + " must be an object or an array");
  }
  for (double v : out) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ParseError(std::string(key) + " entries must be finite and >= 0");
  }
  return CubeCoefficients(std::move(out));
}

Json cube_coefficients_to_json(const DyadicSystem& system, const CubeCoefficients& c) {
  Json j = Json::object();
  for (CubeIndex q = 0; q < system.cube_count(); ++q) {
    if (c[q] != 0.0) j[to_string(system.cube(q))] = c[q];
  }
  return j;
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  try {
    return Json::parse(ss.str());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace twoweight
