#include "doctest.h"
#include "sl2/report.hpp"
#include "sl2/suites.hpp"

using namespace sl2;

TEST_CASE("rationals serialize as decimal strings") {
  CHECK(rational_to_json(Rational(7)) == Json("7"));
  CHECK(rational_to_json(Rational(-3, 4)).dump() == R"({"num":"-3","den":"4"})");
  BigInt big = BigInt(1) << 200;
  CHECK(rational_from_json(rational_to_json(Rational(big, 3))) == Rational(big, 3));
  CHECK_THROWS_AS(rational_from_json(Json("1.5")), ParseError);
  CHECK_THROWS_AS(rational_from_json(Json::parse(R"({"num":"1","den":"0"})")), ParseError);
  CHECK_THROWS_AS(bigint_from_json(Json(5)), ParseError);
}

TEST_CASE("suite reports round-trip") {
  SuiteReport r{"demo", 42, {}};
  r.entries.push_back({"a", "pass", Rational(3, 7), Rational(3, 7), 42, 12, "note"});
  r.entries.push_back({"b", "positive_but_differs", std::nullopt, Rational(-5), 42, 0, ""});
  Json j = to_json(r);
  CHECK(suite_report_from_json(Json::parse(j.dump())) == r);
  CHECK(j["passed"] == true);
}

TEST_CASE("case reports round-trip") {
  CaseReport c = verify_section7("P7.3");
  CaseReport back = case_report_from_json(Json::parse(to_json(c).dump()));
  CHECK(back.case_id == c.case_id);
  CHECK(back.verdict == c.verdict);
  CHECK(back.printed_value == c.printed_value);
  CHECK(back.recomputed_value == c.recomputed_value);
  CHECK(back.notes == c.notes);
  REQUIRE(back.inequality_chain.size() == c.inequality_chain.size());
  for (std::size_t i = 0; i < c.inequality_chain.size(); ++i) {
    CHECK(back.inequality_chain[i].label == c.inequality_chain[i].label);
    CHECK(back.inequality_chain[i].printed == c.inequality_chain[i].printed);
    CHECK(back.inequality_chain[i].recomputed == c.inequality_chain[i].recomputed);
    CHECK(back.inequality_chain[i].ok == c.inequality_chain[i].ok);
  }
}

TEST_CASE("genus reports round-trip") {
  for (std::uint64_t p : {11, 13}) {
    GenusReport g = genus_report(standard_subgroup({SubgroupKind::Borel}, p));
    Json j = to_json(g);
    CHECK(j["genus"].is_string());
    GenusReport back = genus_report_from_json(Json::parse(j.dump()));
    CHECK(back.genus == g.genus);
    CHECK(back.delta == g.delta);
    CHECK(back.cusp_ratio == g.cusp_ratio);
    CHECK(back.index == g.index);
  }
  GroupCtx ctx(5, 1);
  GenusReport g = genus_report(closure({unipotent(ctx)}, ctx));
  CHECK(to_json(g)["genus"].is_null());
  CHECK_FALSE(genus_report_from_json(to_json(g)).genus.has_value());
}

TEST_CASE("same seed gives identical output apart from timing") {
  SuiteOptions o;
  o.seed = 17;
  o.samples = 30;
  for (const char* s : {"lemma6.1", "cor6.5", "section7"}) {
    Json a = without_timing(to_json(run_suite(s, o)));
    Json b = without_timing(to_json(run_suite(s, o)));
    CHECK(a.dump() == b.dump());
    CHECK(a.dump().find("elapsed_ms") == std::string::npos);
  }
}
