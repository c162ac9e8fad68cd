#pragma once

#include <nlohmann/json.hpp>

#include "mobiuscf/report.hpp"

namespace mcf {

// Kept out of report.hpp so only the serialization path pays for the json
// header.
inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["branch"] = r.branch;
  j["p_range"] = {static_cast<long long>(r.lo), static_cast<long long>(r.hi)};
  j["passes"] = r.passes;
  j["ok"] = r.ok();
  auto& f = j["failures"] = nlohmann::json::array();
  for (const auto& x : r.failures)
    f.push_back({{"p", static_cast<long long>(x.index)}, {"lhs", x.lhs}, {"rhs", x.rhs}});
  if (r.threshold) j["threshold"] = static_cast<long long>(*r.threshold);
  if (r.shift) j["shift"] = static_cast<long long>(*r.shift);
  return j;
}

}  // namespace mcf
