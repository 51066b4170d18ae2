#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sl2/genus.hpp"
#include "sl2/section7.hpp"

namespace sl2 {

// One checked item of a verification suite.
// verdict: pass, fail, match, positive_but_differs, skipped, partial.
struct SuiteEntry {
  std::string case_id;
  std::string verdict;
  std::optional<Rational> printed;
  std::optional<Rational> recomputed;
  std::uint64_t seed = 0;
  std::int64_t elapsed_ms = 0;
  std::string notes;

  bool operator==(const SuiteEntry&) const = default;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<SuiteEntry> entries;

  bool passed() const;
  bool operator==(const SuiteReport&) const = default;
};

bool is_failing_verdict(const std::string& verdict);

using Json = nlohmann::ordered_json;

// integers as decimal strings, other rationals as {"num": ..., "den": ...}
Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json bigint_to_json(const BigInt& n);
BigInt bigint_from_json(const Json& j);

Json to_json(const SuiteEntry& e);
Json to_json(const SuiteReport& r);
SuiteEntry suite_entry_from_json(const Json& j);
SuiteReport suite_report_from_json(const Json& j);

Json to_json(const CaseReport& r);
CaseReport case_report_from_json(const Json& j);

Json to_json(const GenusReport& g);
GenusReport genus_report_from_json(const Json& j);

// drops elapsed_ms, for determinism comparisons
Json without_timing(Json j);

}  // namespace sl2
