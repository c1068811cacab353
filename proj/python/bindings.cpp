// Thin bindings: instances and reports cross the boundary as JSON text, the
// Python package turns them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <chrono>
#include <sstream>

#include "twoweight/batch.hpp"
#include "twoweight/generate.hpp"
#include "twoweight/instance_io.hpp"
#include "twoweight/report.hpp"

namespace py = pybind11;
namespace tw = twoweight;

namespace {

tw::Instance parse_instance(const std::string& text) {
  tw::Json j;
  try {
    j = tw::Json::parse(text);
  } catch (const tw::Json::parse_error& e) {
    throw tw::ParseError(e.what());
  }
  return tw::instance_from_json(j);
}

tw::GenParams gen_params(int dimension, int depth, const std::string& p, const std::string& r,
                         const std::string& lambda, const std::string& weights) {
  tw::GenParams params;
  params.dimension = dimension;
  params.depth = depth;
  params.p = tw::parse_exponent(p);
  params.r = tw::parse_exponent(r);
  params.lambda = tw::LambdaPreset::parse(lambda);
  params.weights = tw::parse_weight_preset(weights);
  return params;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.attr("__version__") = TWOWEIGHT_VERSION;
  py::register_exception<tw::ParseError>(m, "ParseError", PyExc_ValueError);

  m.def(
      "generate",
      [](std::uint64_t seed, int dimension, int depth, const std::string& p, const std::string& r,
         const std::string& lambda, const std::string& weights) {
        return tw::dump(tw::instance_to_json(
            tw::generate_instance(seed, gen_params(dimension, depth, p, r, lambda, weights))));
      },
      py::arg("seed"), py::arg("dimension") = 1, py::arg("depth") = 2, py::arg("p") = "2",
      py::arg("r") = "2", py::arg("lambda_preset") = "unit", py::arg("weights") = "unit");

  m.def(
      "verify",
      [](const std::string& instance, std::uint64_t seed, int restarts, int iterations, double tol) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto inst = parse_instance(instance);
        tw::VerificationReport rep;
        {
          py::gil_scoped_release release;
          rep = tw::theorem_verify(inst, tw::Budget{restarts, iterations, seed}, tol);
        }
        tw::ReportMeta meta;
        meta.seed = seed;
        meta.wall_clock_seconds = elapsed(t0);
        return tw::dump(tw::verification_to_json(inst, rep, meta));
      },
      py::arg("instance"), py::arg("seed") = 0, py::arg("restarts") = 16, py::arg("iterations") = 200,
      py::arg("tol") = tw::kDefaultTolerance);

  m.def(
      "trace",
      [](const std::string& instance, const std::string& f, const std::string& a, double tol) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto inst = parse_instance(instance);
        const auto fj = tw::Json{{"f", tw::Json::parse(f)}};
        const auto aj = tw::Json{{"a", tw::Json::parse(a)}};
        const auto tr = tw::proof_trace(inst, tw::leaf_function_from_json(inst.system, fj, "f"),
                                        tw::cube_coefficients_from_json(inst.system, aj, "a"), tol);
        tw::ReportMeta meta;
        meta.wall_clock_seconds = elapsed(t0);
        return tw::dump(tw::trace_to_json(inst, tr, meta));
      },
      py::arg("instance"), py::arg("f"), py::arg("a"), py::arg("tol") = tw::kDefaultTolerance);

  m.def(
      "direct_testing_constant",
      [](const std::string& instance) { return tw::direct_testing_constant(parse_instance(instance)).value; },
      py::arg("instance"));

  m.def(
      "dual_testing_constant",
      [](const std::string& instance, std::uint64_t seed, int restarts, int iterations) {
        const auto d = tw::dual_testing_constant(parse_instance(instance), tw::Budget{restarts, iterations, seed});
        return std::make_pair(d.lower, d.upper);
      },
      py::arg("instance"), py::arg("seed") = 0, py::arg("restarts") = 16, py::arg("iterations") = 200);

  m.def(
      "exact_norm",
      [](const std::string& instance) -> std::optional<double> {
        const auto inst = parse_instance(instance);
        if (inst.exponents.p() != 2.0 || inst.exponents.r() != 2.0) return std::nullopt;
        return tw::exact_norm_p2(inst).exact;
      },
      py::arg("instance"));

  m.def("stein_constant", &tw::stein_constant, py::arg("p_conj"), py::arg("r_conj"));

  m.def(
      "batch",
      [](std::uint64_t seed, std::uint64_t count, int restarts, int iterations, double tol, unsigned threads) {
        tw::BatchOptions opts;
        opts.seed_begin = seed;
        opts.seed_end = seed + count;
        opts.budget = tw::Budget{restarts, iterations, 0};
        opts.tol = tol;
        opts.threads = threads;
        std::vector<tw::BatchRow> rows;
        {
          py::gil_scoped_release release;
          rows = tw::run_batch(opts);
        }
        std::ostringstream out;
        tw::write_csv(out, rows);
        return out.str();
      },
      py::arg("seed") = 0, py::arg("count") = 10, py::arg("restarts") = 16, py::arg("iterations") = 200,
      py::arg("tol") = tw::kDefaultTolerance, py::arg("threads") = 0u);
}
