// Acceptance checks, one line per criterion: "criterion N: PASS|FAIL (seconds) detail".
// Usage: acceptance [N]   (no argument runs all eleven)
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include "sl2/desk.hpp"
#include "sl2/genus.hpp"
#include "sl2/suites.hpp"

using namespace sl2;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

const std::vector<std::pair<std::uint64_t, int>> kGrid = {{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2},
                                                          {3, 3}, {5, 1}, {5, 2}, {7, 1}, {11, 1}, {13, 1}};

Outcome suite_ok(const std::string& name, SuiteOptions o = {}) {
  SuiteReport r = run_suite(name, o);
  std::size_t bad = 0, skipped = 0;
  std::string first;
  for (const auto& e : r.entries) {
    if (e.verdict == "fail") {
      ++bad;
      if (first.empty()) first = e.case_id + ": " + e.notes;
    }
    skipped += e.verdict == "skipped";
  }
  return {bad == 0 && !r.entries.empty(), name + " " + std::to_string(r.entries.size()) + " entries, " +
                                              std::to_string(bad) + " failed, " + std::to_string(skipped) +
                                              " skipped" + (first.empty() ? "" : "; first failure " + first)};
}

Outcome all_of(std::vector<Outcome> v) {
  Outcome o{true, ""};
  for (auto& x : v) {
    o.ok = o.ok && x.ok;
    o.detail += (o.detail.empty() ? "" : "; ") + x.detail;
  }
  return o;
}

Outcome c1() {
  std::size_t checked = 0;
  for (auto [p, n] : kGrid) {
    GroupCtx ctx(p, n);
    BigInt want = BigInt(p + 1) * (p - 1);
    for (int i = 0; i < 3 * n - 2; ++i) want *= p;
    if (BigInt(closure({unipotent(ctx), unipotent_t(ctx)}, ctx).order()) != want)
      return {false, "order mismatch at " + std::to_string(p) + "^" + std::to_string(n)};
    ++checked;
  }
  return {true, std::to_string(checked) + " levels"};
}

Outcome c2() {
  std::size_t checked = 0;
  for (auto [p, n] : kGrid) {
    GroupCtx ctx(p, n);
    std::vector<ConjClassRef> refs = {ConjClassRef::of_sigma(ctx), ConjClassRef::of_tau(ctx)};
    for (int r = 0; r < n; ++r) refs.push_back(ConjClassRef::of_u_power(ctx, r));
    for (const auto& ref : refs) {
      if (BigInt(conj_class_brute(ref.rep(), ctx).size()) != conj_class_size_formula(ref))
        return {false, ref.name() + " at " + std::to_string(p) + "^" + std::to_string(n)};
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " classes"};
}

Outcome c3() {
  Outcome o = suite_ok("lemma4.5");
  SuiteReport r = run_suite("lemma4.5");
  return {o.ok && r.entries.size() == 11, o.detail};
}

Outcome c4() { return suite_ok("lemma4.6"); }

Outcome c5() {
  SuiteReport r = run_suite("lemma4.10");
  std::map<std::string, Rational> got;
  for (const auto& e : r.entries)
    if (e.recomputed) got[e.case_id] = *e.recomputed;
  bool ok = r.passed() && got["A1:sigma"] == 3 && got["A1:tau"] == 2 && got["A1:u"] == 0 && got["A1:u^2"] == 0;
  return {ok, "counts (" + got["A1:sigma"].str() + ", " + got["A1:tau"].str() + ", " + got["A1:u"].str() + ", " +
                  got["A1:u^2"].str() + ")"};
}

Outcome c6() { return suite_ok("genus"); }

Outcome c7() {
  SuiteReport r = run_suite("lemma4.1");
  Rational total = 0;
  for (const auto& e : r.entries)
    if (e.recomputed) total += *e.recomputed;
  Outcome o = suite_ok("lemma4.1");
  return {o.ok && total >= 200, o.detail + ", " + total.str() + " subgroups"};
}

Outcome c8() { return all_of({suite_ok("lemma5.3"), suite_ok("lemma5.6"), suite_ok("lemma5.8-5.16")}); }

Outcome c9() {
  SuiteOptions o;
  o.samples = 500;
  SuiteReport r = run_suite("section6", o);
  std::string detail;
  for (const auto& e : r.entries) detail += (detail.empty() ? "" : "; ") + e.case_id + " " + e.verdict + " " + e.notes;
  return {r.passed() && r.entries.size() == 4, detail};
}

Outcome c10() {
  SuiteReport r = run_suite("section7");
  std::size_t match = 0, differs = 0;
  bool ok = !r.entries.empty();
  for (const auto& e : r.entries) {
    if (e.verdict == "match") {
      ++match;
      ok = ok && e.printed == e.recomputed;
    } else if (e.verdict == "positive_but_differs" && e.case_id == "P7.8") {
      ++differs;
      ok = ok && e.recomputed && *e.recomputed > 0;
    } else {
      ok = false;
    }
  }
  const std::map<std::string, Rational> quoted = {{"P7.2", Rational(1805 - 74 - 1083, 5 * 19 * 19)},
                                                  {"P7.3", Rational(867 - 33 - 578, 3 * 17 * 17)},
                                                  {"P7.4:B", Rational(1183 - 75 - 100 - 546, 7 * 13 * 13)},
                                                  {"P7.12:SL", Rational(512 - 73 - 80 - 248, 512)}};
  for (const auto& e : r.entries) {
    auto it = quoted.find(e.case_id);
    if (it != quoted.end()) ok = ok && e.printed == it->second && e.recomputed == it->second;
  }
  return {ok, std::to_string(match) + " match, " + std::to_string(differs) + " positive_but_differs"};
}

Outcome c11() {
  SuiteReport r = verify_main_theorem_desk(1);
  std::string detail;
  bool ok = !r.entries.empty();
  for (const auto& e : r.entries) {
    ok = ok && e.verdict == "pass" && e.recomputed && *e.recomputed > 0;
    detail += (detail.empty() ? "" : "; ") + e.case_id + " min delta " + (e.recomputed ? e.recomputed->str() : "-");
  }
  return {ok, detail};
}

struct Criterion {
  std::function<Outcome()> run;
  double limit_s;
};

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, Criterion> criteria = {
      {1, {c1, 60}},   {2, {c2, 120}}, {3, {c3, 60}},   {4, {c4, 120}},  {5, {c5, 60}},   {6, {c6, 60}},
      {7, {c7, 300}},  {8, {c8, 300}}, {9, {c9, 600}},  {10, {c10, 10}}, {11, {c11, 300}},
  };
  std::vector<int> which;
  if (argc > 1) {
    which.push_back(std::atoi(argv[1]));
    if (!criteria.count(which[0])) {
      std::cerr << "criterion must be 1..11\n";
      return 2;
    }
  } else {
    for (const auto& [k, v] : criteria) which.push_back(k);
  }
  bool all = true;
  for (int k : which) {
    const Criterion& c = criteria.at(k);
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = s <= c.limit_s;
    bool ok = o.ok && in_time;
    all = all && ok;
    std::cout << "criterion " << k << ": " << (ok ? "PASS" : "FAIL") << " (" << s << " s, limit " << c.limit_s
              << " s) " << o.detail << (in_time ? "" : " [time limit exceeded]") << "\n";
  }
  return all ? 0 : 1;
}
