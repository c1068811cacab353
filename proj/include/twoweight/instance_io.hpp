#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "twoweight/testing.hpp"

namespace twoweight {

/// Malformed or inconsistent input data.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

Json instance_to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

/// Reads {"f": [...]} with one value per leaf.
LeafFunction leaf_function_from_json(const DyadicSystem& system, const Json& j, const char* key);
/// Reads {"a": {"k:i0.i1": v, ...}} (missing cubes are 0) or a canonical-order array.
CubeCoefficients cube_coefficients_from_json(const DyadicSystem& system, const Json& j, const char* key);
/// Non-zero entries keyed by cube id in canonical order.
Json cube_coefficients_to_json(const DyadicSystem& system, const CubeCoefficients& c);

Json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

std::string dump(const Json& j);

}  // namespace twoweight
