#include "sl2/report.hpp"

#include <algorithm>

namespace sl2 {

bool is_failing_verdict(const std::string& verdict) { return verdict == "fail"; }

bool SuiteReport::passed() const {
  return std::none_of(entries.begin(), entries.end(),
                      [](const SuiteEntry& e) { return is_failing_verdict(e.verdict); });
}

Json bigint_to_json(const BigInt& n) { return n.str(); }

BigInt bigint_from_json(const Json& j) {
  if (!j.is_string()) throw ParseError("expected a decimal string");
  const std::string s = j.get<std::string>();
  if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos || s.find('-', 1) != std::string::npos)
    throw ParseError("malformed integer '" + s + "'");
  return BigInt(s);
}

Json rational_to_json(const Rational& q) {
  if (denominator(q) == 1) return bigint_to_json(numerator(q));
  Json j;
  j["num"] = numerator(q).str();
  j["den"] = denominator(q).str();
  return j;
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return Rational(bigint_from_json(j));
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    throw ParseError("expected a rational {\"num\", \"den\"}");
  BigInt den = bigint_from_json(j.at("den"));
  if (den == 0) throw ParseError("zero denominator");
  return Rational(bigint_from_json(j.at("num")), den);
}

namespace {

Json opt_rational(const std::optional<Rational>& q) { return q ? rational_to_json(*q) : Json(nullptr); }

std::optional<Rational> opt_rational_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return rational_from_json(j);
}

}  // namespace

Json to_json(const SuiteEntry& e) {
  Json j;
  j["case_id"] = e.case_id;
  j["verdict"] = e.verdict;
  j["printed"] = opt_rational(e.printed);
  j["recomputed"] = opt_rational(e.recomputed);
  j["seed"] = std::to_string(e.seed);
  j["elapsed_ms"] = std::to_string(e.elapsed_ms);
  j["notes"] = e.notes;
  return j;
}

SuiteEntry suite_entry_from_json(const Json& j) {
  SuiteEntry e;
  e.case_id = j.at("case_id").get<std::string>();
  e.verdict = j.at("verdict").get<std::string>();
  e.printed = opt_rational_from(j.at("printed"));
  e.recomputed = opt_rational_from(j.at("recomputed"));
  e.seed = static_cast<std::uint64_t>(bigint_from_json(j.at("seed")));
  e.elapsed_ms = static_cast<std::int64_t>(bigint_from_json(j.at("elapsed_ms")));
  e.notes = j.at("notes").get<std::string>();
  return e;
}

Json to_json(const SuiteReport& r) {
  Json j;
  j["suite"] = r.suite;
  j["seed"] = std::to_string(r.seed);
  j["passed"] = r.passed();
  j["entries"] = Json::array();
  for (const auto& e : r.entries) j["entries"].push_back(to_json(e));
  return j;
}

SuiteReport suite_report_from_json(const Json& j) {
  SuiteReport r;
  r.suite = j.at("suite").get<std::string>();
  r.seed = static_cast<std::uint64_t>(bigint_from_json(j.at("seed")));
  for (const auto& e : j.at("entries")) r.entries.push_back(suite_entry_from_json(e));
  return r;
}

Json to_json(const CaseReport& r) {
  Json j;
  j["case_id"] = r.case_id;
  j["verdict"] = to_string(r.verdict);
  j["printed"] = rational_to_json(r.printed_value);
  j["recomputed"] = rational_to_json(r.recomputed_value);
  j["notes"] = r.notes;
  j["inequality_chain"] = Json::array();
  for (const auto& s : r.inequality_chain) {
    Json k;
    k["label"] = s.label;
    k["relation"] = s.relation;
    k["printed"] = opt_rational(s.printed);
    k["recomputed"] = rational_to_json(s.recomputed);
    k["ok"] = s.ok;
    j["inequality_chain"].push_back(k);
  }
  return j;
}

CaseReport case_report_from_json(const Json& j) {
  CaseReport r;
  r.case_id = j.at("case_id").get<std::string>();
  const std::string v = j.at("verdict").get<std::string>();
  if (v == "match")
    r.verdict = Verdict::match;
  else if (v == "positive_but_differs")
    r.verdict = Verdict::positive_but_differs;
  else if (v == "fail")
    r.verdict = Verdict::fail;
  else
    throw ParseError("unknown verdict '" + v + "'");
  r.printed_value = rational_from_json(j.at("printed"));
  r.recomputed_value = rational_from_json(j.at("recomputed"));
  r.notes = j.at("notes").get<std::string>();
  for (const auto& k : j.at("inequality_chain"))
    r.inequality_chain.push_back({k.at("label").get<std::string>(), k.at("relation").get<std::string>(),
                                  opt_rational_from(k.at("printed")), rational_from_json(k.at("recomputed")),
                                  k.at("ok").get<bool>()});
  return r;
}

Json to_json(const GenusReport& g) {
  Json j;
  j["genus"] = g.genus ? Json(g.genus->str()) : Json(nullptr);
  j["order"] = bigint_to_json(g.order);
  j["index"] = bigint_to_json(g.index);
  j["count_sigma"] = bigint_to_json(g.count_sigma);
  j["count_tau"] = bigint_to_json(g.count_tau);
  j["fix_sigma"] = bigint_to_json(g.fix_sigma);
  j["fix_tau"] = bigint_to_json(g.fix_tau);
  j["cusp_ratio"] = rational_to_json(g.cusp_ratio);
  j["delta"] = rational_to_json(g.delta);
  return j;
}

GenusReport genus_report_from_json(const Json& j) {
  GenusReport g;
  if (!j.at("genus").is_null()) g.genus = bigint_from_json(j.at("genus"));
  g.order = bigint_from_json(j.at("order"));
  g.index = bigint_from_json(j.at("index"));
  g.count_sigma = bigint_from_json(j.at("count_sigma"));
  g.count_tau = bigint_from_json(j.at("count_tau"));
  g.fix_sigma = bigint_from_json(j.at("fix_sigma"));
  g.fix_tau = bigint_from_json(j.at("fix_tau"));
  g.cusp_ratio = rational_from_json(j.at("cusp_ratio"));
  g.delta = rational_from_json(j.at("delta"));
  return g;
}

Json without_timing(Json j) {
  if (j.is_object()) {
    j.erase("elapsed_ms");
    for (auto& [k, v] : j.items()) v = without_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = without_timing(v);
  }
  return j;
}

}  // namespace sl2
