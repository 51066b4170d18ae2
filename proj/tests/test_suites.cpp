#include "doctest.h"
#include "sl2/suites.hpp"

#include <algorithm>

using namespace sl2;

TEST_CASE("suite registry") {
  auto names = suite_names();
  for (const char* s : {"lemma4.5", "lemma4.6", "lemma4.10", "lemma5.1", "lemma5.2", "lemma5.3", "lemma5.6",
                        "lemma5.8-5.16", "lemma6.1", "cor6.5", "section2", "section7", "main-theorem-desk", "all"})
    CHECK(std::find(names.begin(), names.end(), s) != names.end());
  CHECK_THROWS_AS(run_suite("lemma9.9"), InvalidArgument);
}

TEST_CASE("case filter") {
  SuiteOptions o;
  o.case_filter = "P7.2";
  auto r = run_suite("section7", o);
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].verdict == "match");
  o.case_filter = "P7.5";
  r = run_suite("section7", o);
  CHECK(r.entries.size() == 4);
  o.case_filter = "P7.77";
  CHECK_THROWS_AS(run_suite("section7", o), InvalidArgument);
}

TEST_CASE("thread count does not change results") {
  SuiteOptions one, four;
  four.threads = 4;
  for (const char* s : {"lemma4.6", "lemma5.3"}) {
    auto a = run_suite(s, one), b = run_suite(s, four);
    CHECK(without_timing(to_json(a)).dump() == without_timing(to_json(b)).dump());
    CHECK(a.passed());
  }
}

TEST_CASE("small suites pass") {
  for (const char* s : {"lemma4.5", "lemma4.10", "lemma5.1", "lemma5.2", "lemma5.6", "lemma5.8-5.16", "genus"}) {
    CAPTURE(s);
    auto r = run_suite(s);
    CHECK(r.passed());
    CHECK_FALSE(r.entries.empty());
  }
}

TEST_CASE("desk entries record skips and budget") {
  DeskBudget b;
  b.samples = 3;
  auto r = verify_main_theorem_desk(5, b, 1);
  bool skipped_e = false;
  for (const auto& e : r.entries) skipped_e = skipped_e || (e.case_id == "part5:E:3^4" && e.verdict == "skipped");
  CHECK(skipped_e);
  CHECK(r.passed());
  b.time_ms = 0;
  auto late = verify_main_theorem_desk(3, b, 1);
  for (const auto& e : late.entries) CHECK(e.verdict == "partial");
  CHECK_THROWS_AS(verify_main_theorem_desk(8, b, 1), InvalidArgument);
}
