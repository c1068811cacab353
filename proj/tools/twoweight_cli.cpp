// Command line front end: gen, verify, trace, batch, search.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "twoweight/batch.hpp"
#include "twoweight/generate.hpp"
#include "twoweight/instance_io.hpp"
#include "twoweight/report.hpp"
#include "twoweight/testing.hpp"

namespace tw = twoweight;

namespace {

enum Exit { kPass = 0, kCheckFailed = 1, kUsage = 2, kBadInput = 3, kIo = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    tw::write_text(out, text);
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct GenFlags {
  int dim = 1;
  int depth = 2;
  double p = 2.0;
  std::string r = "2";
  std::string lambda = "unit";
  std::string weights = "unit";
};

void add_gen_flags(CLI::App* cmd, GenFlags& g) {
  cmd->add_option("--dim", g.dim, "dimension d")->capture_default_str();
  cmd->add_option("--depth", g.depth, "finest level L")->capture_default_str();
  cmd->add_option("--p", g.p, "integrability exponent p in (1, inf)")->capture_default_str();
  cmd->add_option("--r", g.r, "sequence exponent r in [1, inf], or inf")->capture_default_str();
  cmd->add_option("--lambda-preset", g.lambda, "unit | random | sawyer:a")->capture_default_str();
  cmd->add_option("--weights", g.weights, "unit | lognormal | sparse")->capture_default_str();
}

tw::GenParams to_params(const GenFlags& g) {
  try {
    tw::GenParams p;
    p.dimension = g.dim;
    p.depth = g.depth;
    p.p = g.p;
    p.r = tw::parse_exponent(g.r);
    p.lambda = tw::LambdaPreset::parse(g.lambda);
    p.weights = tw::parse_weight_preset(g.weights);
    tw::Exponents check(p.p, p.r);
    (void)check;
    return p;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-weight testing constants for positive dyadic operators"};
  app.set_version_flag("--version", std::string(TWOWEIGHT_VERSION));
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::string out;
  double tol = tw::kDefaultTolerance;
  tw::Budget budget;

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance file");
  GenFlags gen_flags;
  gen->add_option("--seed", seed, "random seed")->capture_default_str();
  add_gen_flags(gen, gen_flags);
  gen->add_option("--out", out, "output file (default: stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "compute the constants and check the theorem");
  std::string instance_path;
  verify->add_option("instance", instance_path, "instance file")->required();
  verify->add_option("--seed", seed, "optimizer seed")->capture_default_str();
  verify->add_option("--budget-restarts", budget.restarts, "random restarts")->capture_default_str();
  verify->add_option("--budget-iters", budget.iterations, "ascent iterations per restart")->capture_default_str();
  verify->add_option("--tol", tol, "relative tolerance")->capture_default_str();
  verify->add_option("--out", out, "report file (default: stdout)");

  // trace
  auto* trace = app.add_subcommand("trace", "instrumented sufficiency argument for one (f, g)");
  std::string f_path, g_path;
  trace->add_option("instance", instance_path, "instance file")->required();
  trace->add_option("f", f_path, "file with {\"f\": [...]}")->required();
  trace->add_option("g", g_path, "file with {\"a\": {cube: value}}")->required();
  trace->add_option("--tol", tol, "relative tolerance")->capture_default_str();
  trace->add_option("--out", out, "report file (default: stdout)");

  // batch
  auto* batch = app.add_subcommand("batch", "verify a seed range and write CSV");
  tw::BatchOptions bopt;
  GenFlags batch_flags;
  std::uint64_t seed_count = 0;
  batch->add_option("--seed", bopt.seed_begin, "first seed")->capture_default_str();
  batch->add_option("--count", seed_count, "number of seeds")->capture_default_str();
  add_gen_flags(batch, batch_flags);
  batch->add_option("--budget-restarts", budget.restarts, "random restarts")->capture_default_str();
  batch->add_option("--budget-iters", budget.iterations, "ascent iterations per restart")->capture_default_str();
  batch->add_option("--tol", tol, "relative tolerance")->capture_default_str();
  batch->add_option("--threads", bopt.threads, "worker threads, 0 = all cores")->capture_default_str();
  batch->add_option("--out", out, "CSV file (default: stdout)");

  // search
  auto* search = app.add_subcommand("search", "hill-climb the ratio Ctilde / (C + Cstar)");
  tw::SearchOptions sopt;
  GenFlags search_flags;
  std::string out_dir = "search-out";
  search->add_option("--seed", sopt.seed, "random seed")->capture_default_str();
  add_gen_flags(search, search_flags);
  search->add_option("--iterations", sopt.iterations, "perturbation steps")->capture_default_str();
  search->add_option("--restart-every", sopt.restart_every, "fresh instance every n steps, 0 = never")
      ->capture_default_str();
  search->add_option("--top-k", sopt.top_k, "instances kept")->capture_default_str();
  search->add_option("--budget-restarts", sopt.budget.restarts, "random restarts")->capture_default_str();
  search->add_option("--budget-iters", sopt.budget.iterations, "ascent iterations")->capture_default_str();
  search->add_option("--tol", tol, "relative tolerance")->capture_default_str();
  search->add_option("--out", out_dir, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (*gen) {
      const auto inst = tw::generate_instance(seed, to_params(gen_flags));
      emit(out, tw::dump(tw::instance_to_json(inst)));
      return kPass;
    }
    if (*verify) {
      const auto inst = tw::instance_from_json(tw::read_json(instance_path));
      budget.seed = seed;
      if (budget.restarts < 0 || budget.iterations < 0) throw UsageError("budgets must be non-negative");
      const auto rep = tw::theorem_verify(inst, budget, tol);
      tw::ReportMeta meta;
      meta.seed = seed;
      meta.wall_clock_seconds = seconds_since(t0);
      emit(out, tw::dump(tw::verification_to_json(inst, rep, meta)));
      return rep.passed() ? kPass : kCheckFailed;
    }
    if (*trace) {
      const auto inst = tw::instance_from_json(tw::read_json(instance_path));
      const auto f = tw::leaf_function_from_json(inst.system, tw::read_json(f_path), "f");
      const auto a = tw::cube_coefficients_from_json(inst.system, tw::read_json(g_path), "a");
      const auto tr = tw::proof_trace(inst, f, a, tol);
      tw::ReportMeta meta;
      meta.wall_clock_seconds = seconds_since(t0);
      emit(out, tw::dump(tw::trace_to_json(inst, tr, meta)));
      return tr.passed() ? kPass : kCheckFailed;
    }
    if (*batch) {
      bopt.seed_end = bopt.seed_begin + seed_count;
      // Flags given explicitly pin that parameter; the rest follow the sweep.
      auto given = [&](const char* name) { return batch->count(name) > 0; };
      const auto fixed = to_params(batch_flags);
      if (given("--dim")) bopt.params.dimension = fixed.dimension;
      if (given("--depth")) bopt.params.depth = fixed.depth;
      if (given("--p")) bopt.params.p = fixed.p;
      if (given("--r")) bopt.params.r = fixed.r;
      if (given("--lambda-preset")) bopt.params.lambda = fixed.lambda;
      if (given("--weights")) bopt.params.weights = fixed.weights;
      bopt.budget = budget;
      bopt.tol = tol;
      const auto rows = tw::run_batch(bopt);
      std::ostringstream csv;
      tw::write_csv(csv, rows);
      emit(out, csv.str());
      std::size_t passed = 0;
      double worst = 0.0;
      for (const auto& r : rows) {
        passed += r.pass ? 1 : 0;
        worst = std::max(worst, r.ratio);
      }
      std::fprintf(stderr, "%zu instances, %zu passed, max ratio %.6g\n", rows.size(), passed, worst);
      return passed == rows.size() ? kPass : kCheckFailed;
    }
    if (*search) {
      sopt.params = to_params(search_flags);
      sopt.tol = tol;
      const auto top = tw::run_search(sopt);
      std::filesystem::create_directories(out_dir);
      bool all = true;
      for (std::size_t i = 0; i < top.size(); ++i) {
        const auto base = std::filesystem::path(out_dir) / ("best_" + std::to_string(i));
        tw::write_text(base.string() + ".json", tw::dump(tw::instance_to_json(top[i].instance)));
        tw::ReportMeta meta;
        meta.seed = sopt.seed;
        meta.wall_clock_seconds = seconds_since(t0);
        tw::write_text(base.string() + ".report.json",
                       tw::dump(tw::verification_to_json(top[i].instance, top[i].report, meta)));
        std::printf("%zu %.17g %s\n", i, top[i].ratio, base.string().c_str());
        all = all && top[i].report.passed();
      }
      return all ? kPass : kCheckFailed;
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const tw::ParseError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kBadInput;
  } catch (const tw::IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  return kUsage;
}
