#pragma once

#include <cstdint>

#include "sl2/report.hpp"

namespace sl2 {

struct DeskBudget {
  std::int64_t time_ms = 300000;  // wall-clock budget for the whole part
  std::size_t samples = 20;       // sampled slim subgroups per (p, kind) in parts 2-7
};

// Desk-scale checks of the main theorem's seven parts.
// Part 1 is exhaustive over H ∋ -1 inside B(23), C(11), C(13), D(13), E(17), E(19).
// Parts 2-3 sample slim subgroups over p = 11 (level p^2), p = 7 and p = 5 (level p^3) and
// require delta > 0. Parts 4-7 run the slim-subgroup bound audits at reduced exponents
// (5^3, 3^4, 2^6, 2^7) instead of the full statement.
// Entries left when the budget runs out are reported with verdict "partial".
SuiteReport verify_main_theorem_desk(int part, const DeskBudget& budget = {}, std::uint64_t seed = 1);

}  // namespace sl2
