#include "doctest.h"
#include "sl2/section7.hpp"

using namespace sl2;

TEST_CASE("every case reproduces or is flagged") {
  for (const std::string& id : section7_case_ids()) {
    CAPTURE(id);
    CaseReport r = verify_section7(id);
    CHECK(r.verdict != Verdict::fail);
    CHECK(r.recomputed_value > 0);
    if (id == "P7.8")
      CHECK(r.verdict == Verdict::positive_but_differs);
    else
      CHECK(r.verdict == Verdict::match);
  }
}

TEST_CASE("printed final fractions") {
  CHECK(verify_section7("P7.2").printed_value == Rational(1805 - 74 - 1083, 5 * 19 * 19));
  CHECK(verify_section7("P7.3").printed_value == Rational(867 - 33 - 578, 3 * 17 * 17));
  CHECK(verify_section7("P7.4:B").printed_value == Rational(1183 - 75 - 100 - 546, 7 * 13 * 13));
  CHECK(verify_section7("P7.12:SL").printed_value == Rational(512 - 73 - 80 - 248, 512));
  for (const char* id : {"P7.2", "P7.3", "P7.4:B", "P7.12:SL"}) {
    CaseReport r = verify_section7(id);
    CHECK(r.printed_value == r.recomputed_value);
  }
}

TEST_CASE("chains are internally consistent") {
  CaseReport r = verify_section7("P7.10:SL");
  REQUIRE_FALSE(r.inequality_chain.empty());
  for (const CaseStep& s : r.inequality_chain) {
    CAPTURE(s.label);
    if (s.relation == "<=") CHECK(s.recomputed <= *s.printed);
    if (s.relation == "==" && s.printed) CHECK(s.recomputed == *s.printed);
  }
}

TEST_CASE("unknown case ids") {
  CHECK_THROWS_AS(verify_section7("P7.99"), InvalidArgument);
  CHECK_THROWS_AS(verify_section7("L7.1:16"), InvalidArgument);
  CHECK_THROWS_AS(verify_section7("L7.1:13"), InvalidArgument);
}
