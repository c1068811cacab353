#include "twoweight/report.hpp"

#include <cmath>

#include "twoweight/generate.hpp"

namespace twoweight {

namespace {

Json cube_json(const DyadicSystem& system, CubeIndex q) {
  if (q == kNoCube) return nullptr;
  return to_string(system.cube(q));
}

Json meta_json(const ReportMeta& meta) {
  Json j;
  j["version"] = meta.version;
  j["seed"] = meta.seed ? Json(*meta.seed) : Json(nullptr);
  j["wall_clock_seconds"] = meta.wall_clock_seconds;
  return j;
}

Json exponents_json(const Exponents& e) {
  Json j;
  j["p"] = e.p();
  j["r"] = std::isinf(e.r()) ? Json("inf") : Json(e.r());
  j["p_conj"] = e.p_conj();
  j["r_conj"] = std::isinf(e.r_conj()) ? Json("inf") : Json(e.r_conj());
  return j;
}

}  // namespace

Json check_to_json(const InequalityCheck& check) {
  Json j;
  j["name"] = check.name;
  j["lhs"] = check.lhs;
  j["rhs"] = check.rhs;
  j["constant"] = check.constant;
  j["holds"] = check.holds;
  j["slack"] = check.slack;
  return j;
}

Json property_report_to_json(const PropertyReport& report) {
  Json arr = Json::array();
  for (const auto& c : report.checks) {
    Json j;
    j["name"] = c.name;
    j["holds"] = c.holds;
    j["worst_slack"] = std::isinf(c.worst_slack) ? Json(nullptr) : Json(c.worst_slack);
    j["violations"] = c.violations;
    arr.push_back(std::move(j));
  }
  return arr;
}

Json family_to_json(const DyadicSystem& system, const StoppingFamily& family) {
  Json arr = Json::array();
  for (const auto& m : family.members) {
    Json j;
    j["cube"] = cube_json(system, m.cube);
    j["generation"] = m.generation;
    Json kids = Json::array();
    for (CubeIndex c : m.children) kids.push_back(cube_json(system, c));
    j["children"] = std::move(kids);
    std::string mask(system.leaf_count(), '0');
    for (LeafIndex x : m.residual) mask[x] = '1';
    j["residual_mask"] = std::move(mask);
    arr.push_back(std::move(j));
  }
  return arr;
}

Json verification_to_json(const Instance& inst, const VerificationReport& report, const ReportMeta& meta) {
  const auto& sys = inst.system;
  const auto& k = report.constants;
  Json j;
  j["command"] = "verify";
  j["meta"] = meta_json(meta);
  j["instance"] = {{"dimension", sys.dimension()}, {"depth", sys.depth()}};
  j["exponents"] = exponents_json(inst.exponents);

  Json c;
  c["C"] = k.c_direct;
  c["Cstar_lower"] = k.cstar_lower;
  c["Cstar_upper"] = k.cstar_upper;
  c["Ctilde_lower"] = k.ctilde_lower;
  c["Ctilde_exact"] = k.ctilde_exact ? Json(*k.ctilde_exact) : Json(nullptr);
  c["exact_converged"] = k.exact_converged;
  c["stein_constant"] = report.stein;
  c["bound"] = report.bound;
  j["constants"] = std::move(c);

  Json w;
  w["C"] = cube_json(sys, k.direct_witness);
  w["Cstar_upper"] = cube_json(sys, k.dual_upper_witness);
  Json dual;
  dual["R"] = cube_json(sys, k.dual_lower_witness);
  dual["a"] = k.dual_lower_coefficients.empty()
                  ? Json::object()
                  : cube_coefficients_to_json(sys, CubeCoefficients(k.dual_lower_coefficients));
  w["Cstar_lower"] = std::move(dual);
  w["Ctilde_lower_f"] = k.norm_witness;
  j["witnesses"] = std::move(w);

  Json checks = Json::array();
  for (const auto& ch : report.checks) checks.push_back(check_to_json(ch));
  j["checks"] = std::move(checks);
  Json notes = Json::array();
  for (const auto& ch : report.notes) notes.push_back(check_to_json(ch));
  j["notes"] = std::move(notes);
  j["passed"] = report.passed();
  return j;
}

Json trace_to_json(const Instance& inst, const ProofTrace& trace, const ReportMeta& meta) {
  const auto& sys = inst.system;
  Json j;
  j["command"] = "trace";
  j["meta"] = meta_json(meta);
  j["instance"] = {{"dimension", sys.dimension()}, {"depth", sys.depth()}};
  j["exponents"] = exponents_json(inst.exponents);
  j["f_family"] = family_to_json(sys, trace.f_family);
  j["g_family"] = family_to_json(sys, trace.g_family);

  Json s;
  s["pairing"] = trace.pairing;
  s["sum1"] = trace.sum1;
  s["sum2"] = trace.sum2;
  s["sum2_with_ties"] = trace.sum2_with_ties;
  s["f_norm"] = trace.f_norm;
  s["g_norm"] = trace.g_norm;
  s["f_G_norm_sum"] = trace.fg_norm_sum;
  s["g_F_norm_sum"] = trace.gf_norm_sum;
  s["C"] = trace.c_direct;
  s["Cstar_upper"] = trace.cstar_upper;
  j["sums"] = std::move(s);

  Json checks = Json::array();
  for (const auto& ch : trace.checks) checks.push_back(check_to_json(ch));
  j["checks"] = std::move(checks);
  j["passed"] = trace.passed();
  return j;
}

}  // namespace twoweight
