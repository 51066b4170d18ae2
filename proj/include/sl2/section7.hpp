#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sl2/bounds.hpp"

namespace sl2 {

enum class Verdict { match, positive_but_differs, fail };
std::string to_string(Verdict v);

// relation "==": printed must equal recomputed.
// relation "<=": recomputed (an actual count or size) must not exceed printed (the bound used).
// relation "final": a branch's lower bound for delta; must be positive and equal the printed one.
struct CaseStep {
  std::string label;
  std::string relation;
  std::optional<Rational> printed;
  Rational recomputed;
  bool ok = true;
};

struct CaseReport {
  std::string case_id;
  std::vector<CaseStep> inequality_chain;
  Rational printed_value;
  Rational recomputed_value;
  Verdict verdict = Verdict::fail;
  std::string notes;
};

// L7.1:p (p >= 17 prime), P7.2, P7.3, P7.4:{B,E}, P7.5:{B,C,D,E}, P7.6:{B,D,E}, P7.8,
// P7.9:{B,D,E}, P7.10:{B,C,D,SL}, P7.11, P7.12:{F,SL}; InvalidArgument otherwise
CaseReport verify_section7(const std::string& case_id);
// every fixed case id, plus L7.1 at the primes 17..43
std::vector<std::string> section7_case_ids();

// (p^2 - 7p - 164) / ((p - 1) p)
Rational lemma71_value(std::uint64_t p);

}  // namespace sl2
