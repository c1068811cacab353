#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "twoweight/instance_io.hpp"
#include "twoweight/testing.hpp"

namespace twoweight {

struct ReportMeta {
  std::optional<std::uint64_t> seed;
  double wall_clock_seconds = 0.0;
  std::string version = TWOWEIGHT_VERSION;
};

Json check_to_json(const InequalityCheck& check);
Json property_report_to_json(const PropertyReport& report);
/// Members with generation, children and a residual leaf mask ("1" = in E(F)).
Json family_to_json(const DyadicSystem& system, const StoppingFamily& family);

Json verification_to_json(const Instance& inst, const VerificationReport& report, const ReportMeta& meta);
Json trace_to_json(const Instance& inst, const ProofTrace& trace, const ReportMeta& meta);

}  // namespace twoweight
