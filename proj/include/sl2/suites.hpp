#pragma once

#include <string>
#include <vector>

#include "sl2/desk.hpp"
#include "sl2/report.hpp"

namespace sl2 {

struct SuiteOptions {
  std::uint64_t seed = 1;
  int threads = 1;
  std::string case_filter;  // exact case id, or a prefix ending before ':'
  std::size_t samples = 0;  // sampled subgroups per level; 0 keeps each suite's default
  DeskBudget desk;
};

// lemma4.1, lemma4.5, lemma4.6, lemma4.10, genus, lemma5.1, lemma5.2, lemma5.3, lemma5.6,
// lemma5.8-5.16, lemma6.1, cor6.5, section6, section2, section7, main-theorem-desk, all
std::vector<std::string> suite_names();

// Entries come back in case order regardless of threads. InvalidArgument on an unknown suite.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opt = {});

}  // namespace sl2
