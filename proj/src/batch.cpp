#include "twoweight/batch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <random>
#include <thread>

#include "twoweight/ascent.hpp"

namespace twoweight {

GenParams ParamOverrides::resolve(std::uint64_t seed) const {
  GenParams g = sweep_params(seed);
  if (dimension) g.dimension = *dimension;
  if (depth) g.depth = *depth;
  if (p) g.p = *p;
  if (r) g.r = *r;
  if (lambda) g.lambda = *lambda;
  if (weights) g.weights = *weights;
  return g;
}

double score(const VerificationReport& report) {
  const auto& k = report.constants;
  const double den = k.c_direct + k.cstar_upper;
  return den > 0.0 ? k.ctilde_lower / den : 0.0;
}

BatchRow evaluate_seed(std::uint64_t seed, const GenParams& params, const Budget& budget, double tol) {
  const Instance inst = generate_instance(seed, params);
  Budget b = budget;
  b.seed = seed;
  const auto rep = theorem_verify(inst, b, tol);
  BatchRow row;
  row.seed = seed;
  row.params = params;
  row.constants = rep.constants;
  row.bound = rep.bound;
  row.ratio = score(rep);
  row.pass = rep.passed();
  return row;
}

std::vector<BatchRow> run_batch(const BatchOptions& options) {
  const std::uint64_t n = options.seed_end > options.seed_begin ? options.seed_end - options.seed_begin : 0;
  std::vector<BatchRow> rows(n);
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(n, 1)));

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (std::uint64_t i; (i = next.fetch_add(1)) < n && !failed;) {
      const std::uint64_t seed = options.seed_begin + i;
      try {
        rows[i] = evaluate_seed(seed, options.params.resolve(seed), options.budget, options.tol);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return rows;
}

void write_csv(std::ostream& out, const std::vector<BatchRow>& rows) {
  out << "seed,d,L,p,r,C,Cstar_lower,Cstar_upper,Ctilde_lower,Ctilde_exact,bound,ratio,pass\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (const auto& r : rows) {
    const auto& k = r.constants;
    out << r.seed << ',' << r.params.dimension << ',' << r.params.depth << ',' << format_exponent(r.params.p)
        << ',' << format_exponent(r.params.r) << ',' << num(k.c_direct) << ',' << num(k.cstar_lower) << ','
        << num(k.cstar_upper) << ',' << num(k.ctilde_lower) << ','
        << (k.ctilde_exact ? num(*k.ctilde_exact) : std::string()) << ',' << num(r.bound) << ','
        << num(r.ratio) << ',' << (r.pass ? "true" : "false") << '\n';
  }
}

namespace {

Instance perturb(const Instance& inst, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 0.5);
  std::bernoulli_distribution touch(0.3);
  auto jiggle = [&](std::vector<double> v) {
    for (double& x : v) {
      if (touch(rng)) x = (x == 0.0 ? std::exp(normal(rng)) * 0.1 : x * std::exp(normal(rng)));
    }
    return v;
  };
  std::uniform_int_distribution<int> which(0, 2);
  auto lambda = inst.lambda.vector();
  auto sigma = inst.sigma.vector();
  auto omega = inst.omega.vector();
  switch (which(rng)) {
    case 0: lambda = jiggle(std::move(lambda)); break;
    case 1: sigma = jiggle(std::move(sigma)); break;
    default: omega = jiggle(std::move(omega)); break;
  }
  return Instance(inst.system, CubeCoefficients(std::move(lambda)), LeafFunction(std::move(sigma)),
                  LeafFunction(std::move(omega)), inst.exponents);
}

}  // namespace

std::vector<SearchEntry> run_search(const SearchOptions& options) {
  std::vector<SearchEntry> top;
  auto offer = [&](const Instance& inst, const VerificationReport& rep) {
    const double s = score(rep);
    top.push_back(SearchEntry{s, inst, rep});
    std::stable_sort(top.begin(), top.end(),
                     [](const SearchEntry& a, const SearchEntry& b) { return a.ratio > b.ratio; });
    if (top.size() > options.top_k) top.pop_back();
  };
  auto evaluate = [&](const Instance& inst, std::uint64_t stream) {
    Budget b = options.budget;
    b.seed = split_seed(options.seed, stream);
    return theorem_verify(inst, b, options.tol);
  };

  std::mt19937_64 rng(split_seed(options.seed, 0x5EA7C4));
  Instance current = generate_instance(options.seed, options.params);
  VerificationReport current_rep = evaluate(current, 0);
  double current_score = score(current_rep);
  offer(current, current_rep);

  for (int it = 1; it <= options.iterations; ++it) {
    const bool restart = options.restart_every > 0 && it % options.restart_every == 0;
    Instance candidate = restart ? generate_instance(split_seed(options.seed, 0xA000 + it), options.params)
                                 : perturb(current, rng);
    const auto rep = evaluate(candidate, static_cast<std::uint64_t>(it));
    const double s = score(rep);
    offer(candidate, rep);
    if (restart || s > current_score) {
      current = std::move(candidate);
      current_rep = rep;
      current_score = s;
    }
  }
  return top;
}

}  // namespace twoweight
