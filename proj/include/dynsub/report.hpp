#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dynsub/harness.hpp"

namespace dynsub::harness {

/// Report JSON. wall_time is written only when timing is requested, so the
/// default output is byte-identical across runs.
nlohmann::json to_json(const SuiteReport& r, bool timing = false);
nlohmann::json to_json(const std::vector<SuiteReport>& reports, std::uint64_t seed,
                       bool timing = false);

/// One line per suite: name, PASS/FAIL, worst slack, tolerance and case.
std::string summary_line(const SuiteReport& r);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

}  // namespace dynsub::harness
