#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sl2/bounds.hpp"
#include "sl2/genus.hpp"
#include "sl2/report.hpp"
#include "sl2/suites.hpp"

using namespace sl2;

namespace {

struct Args {
  std::uint64_t p = 0;
  int n = 1;
  std::string subgroup;
  std::string cls;
  std::string suite;
  std::string case_id;
  std::string output = "text";
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> max_elements;
  int threads = 1;
  std::size_t samples = 0;
};

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void need_level(const Args& a) {
  if (a.p == 0) throw Usage("--p is required");
  if (!is_prime(a.p)) throw Usage("--p must be prime");
  if (a.n < 1) throw Usage("--n must be >= 1");
}

void emit(const Args& a, const Json& j, const std::string& text) {
  if (a.output == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

// sigma, tau, u, u^p^r with r a number (or u^<p>^r)
ConjClassRef parse_class(const std::string& s, const GroupCtx& ctx) {
  if (s == "sigma") return ConjClassRef::of_sigma(ctx);
  if (s == "tau") return ConjClassRef::of_tau(ctx);
  if (s == "u") return ConjClassRef::of_u_power(ctx, 0);
  if (s.rfind("u^", 0) == 0) {
    auto hat = s.find('^', 2);
    if (hat != std::string::npos) {
      const std::string base = s.substr(2, hat - 2);
      if (base == "p" || base == std::to_string(ctx.p())) {
        try {
          std::size_t used = 0;
          int r = std::stoi(s.substr(hat + 1), &used);
          if (used == s.size() - hat - 1 && r >= 0 && r < ctx.n()) return ConjClassRef::of_u_power(ctx, r);
        } catch (const std::logic_error&) {
        }
      }
    }
  }
  throw Usage("--class must be sigma, tau, u or u^p^r with 0 <= r < n, got '" + s + "'");
}

int cmd_genus(const Args& a) {
  need_level(a);
  if (a.subgroup.empty()) throw Usage("--subgroup is required");
  Subgroup h = parse_subgroup_spec(a.subgroup, a.p, a.n);
  GenusReport g = genus_report(h);
  Json j = to_json(g);
  std::string text = "genus " + (g.genus ? g.genus->str() : std::string("undefined (-1 not in H)")) + "\n" +
                     "order " + g.order.str() + "\nindex " + g.index.str() + "\n" + "count sigma " +
                     g.count_sigma.str() + "\ncount tau " + g.count_tau.str() + "\n" + "fix sigma " +
                     g.fix_sigma.str() + "\nfix tau " + g.fix_tau.str() + "\n" + "cusp ratio " +
                     g.cusp_ratio.str() + "\ndelta " + g.delta.str() + "\n";
  emit(a, j, text);
  return 0;
}

int cmd_class_table(const Args& a) {
  need_level(a);
  GroupCtx ctx(a.p, a.n);
  std::vector<ElementSet> classes = all_classes(ctx);
  // named classes first, in the order 1, -1, sigma, -sigma, tau, -tau, u^(p^r), -u^(p^r)
  std::vector<std::pair<std::string, Mat2>> named = {{"1", identity(ctx)},       {"-1", minus_one(ctx)},
                                                     {"sigma", sigma(ctx)},      {"-sigma", mat_neg(sigma(ctx), ctx)},
                                                     {"tau", tau(ctx)},          {"-tau", mat_neg(tau(ctx), ctx)}};
  for (int r = 0; r < a.n; ++r) {
    Mat2 u = unipotent_power(ctx, ctx.pk(r));
    std::string nm = r == 0 ? "u" : "u^" + std::to_string(a.p) + "^" + std::to_string(r);
    named.push_back({nm, u});
    named.push_back({"-" + nm, mat_neg(u, ctx)});
  }
  std::vector<std::pair<std::string, const ElementSet*>> rows;
  std::vector<bool> used(classes.size(), false);
  for (const auto& [nm, m] : named)
    for (std::size_t i = 0; i < classes.size(); ++i)
      if (!used[i] && classes[i].contains(m)) {
        used[i] = true;
        rows.push_back({nm, &classes[i]});
        break;
      }
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (!used[i]) rows.push_back({"", &classes[i]});

  Json j;
  j["p"] = std::to_string(a.p);
  j["n"] = std::to_string(a.n);
  j["group_order"] = group_order(a.p, a.n).str();
  j["classes"] = Json::array();
  std::string text = "SL2(Z/" + std::to_string(ctx.modulus()) + "): " + std::to_string(rows.size()) + " classes\n";
  for (const auto& [nm, c] : rows) {
    Mat2 rep = c->matrices().front();
    Json k;
    k["name"] = nm.empty() ? Json(nullptr) : Json(nm);
    k["representative"] = format_signed(rep);
    k["size"] = std::to_string(c->size());
    k["elements"] = Json::array();
    for (const Mat2& x : c->matrices()) k["elements"].push_back(format_signed(x));
    j["classes"].push_back(k);
    text += (nm.empty() ? std::string("-") : nm) + "\t" + std::to_string(c->size()) + "\t";
    bool first = true;
    for (const Mat2& x : c->matrices()) {
      text += (first ? "" : " ") + std::string("(") + format_signed(x) + ")";
      first = false;
    }
    text += "\n";
  }
  emit(a, j, text);
  return 0;
}

int cmd_count(const Args& a) {
  need_level(a);
  if (a.subgroup.empty()) throw Usage("--subgroup is required");
  if (a.cls.empty()) throw Usage("--class is required");
  Subgroup h = parse_subgroup_spec(a.subgroup, a.p, a.n);
  ConjClassRef ref = parse_class(a.cls, h.ctx());
  BigInt c = count_in_subgroup(h, ref);
  BigInt size = conj_class_size_formula(ref);
  Json j;
  j["class"] = ref.name();
  j["count"] = c.str();
  j["class_size"] = size.str();
  j["subgroup_order"] = std::to_string(h.order());
  j["ratio"] = rational_to_json(Rational(c, size));
  emit(a, j, ref.name() + ": " + c.str() + " of " + size.str() + " class elements in H (|H| = " +
                 std::to_string(h.order()) + ")\n");
  return 0;
}

int cmd_verify(const Args& a) {
  if (a.suite.empty()) throw Usage("--suite is required");
  SuiteOptions o;
  o.seed = a.seed;
  o.threads = a.threads;
  o.case_filter = a.case_id;
  o.samples = a.samples;
  SuiteReport r;
  try {
    r = run_suite(a.suite, o);
  } catch (const InvalidArgument& e) {
    throw Usage(e.what());
  }
  std::string text;
  for (const SuiteEntry& e : r.entries) {
    text += e.case_id + "\t" + e.verdict;
    if (e.printed) text += "\tprinted " + e.printed->str();
    if (e.recomputed) text += "\trecomputed " + e.recomputed->str();
    if (!e.notes.empty()) text += "\t" + e.notes;
    text += "\n";
  }
  text += std::string(r.passed() ? "PASS" : "FAIL") + " " + r.suite + " (" + std::to_string(r.entries.size()) +
          " entries)\n";
  emit(a, to_json(r), text);
  return r.passed() ? 0 : 1;
}

int cmd_bounds(const Args& a) {
  need_level(a);
  Json j;
  std::string text;
  if (a.subgroup.empty()) {
    j["p"] = std::to_string(a.p);
    j["n"] = std::to_string(a.n);
    j["sequences"] = Json::object();
    for (BoundKind k : {BoundKind::a_sigma_p, BoundKind::a_tau_p, BoundKind::a_tau_3, BoundKind::a_u_p,
                        BoundKind::a_u_2, BoundKind::a_sigma_2, BoundKind::a_tau_2, BoundKind::b_u_2}) {
      if (!bound_domain_ok(k, a.p, a.n)) continue;
      BigInt v = bound_sequence(k, a.p, a.n);
      j["sequences"][to_string(k)] = v.str();
      text += to_string(k) + "\t" + v.str() + "\n";
    }
    if (text.empty()) text = "no bound sequence is defined at p=" + std::to_string(a.p) + ", n=" + std::to_string(a.n) + "\n";
    emit(a, j, text);
    return 0;
  }
  Subgroup h = parse_subgroup_spec(a.subgroup, a.p, a.n);
  if (!is_slim(h)) throw Usage("bounds are stated for slim subgroups; the given subgroup is not slim");
  bool ok = true;
  j["audits"] = Json::array();
  for (const ConjClassRef& alpha : bounded_classes(h.ctx()))
    for (const SlimBoundAudit& au : audit_slim_bounds(h, alpha)) {
      ok = ok && au.holds;
      Json k;
      k["class"] = alpha.name();
      k["bound"] = to_string(au.kind);
      k["count"] = au.count.str();
      k["reduced"] = au.reduced.str();
      k["rhs"] = au.rhs.str();
      k["chain_audited"] = au.chain_audited;
      k["holds"] = au.holds;
      j["audits"].push_back(k);
      text += alpha.name() + "\t" + to_string(au.kind) + "\t" + au.count.str() + " <= " + au.rhs.str() + "\t" +
              (au.holds ? "ok" : "FAIL") + "\n";
    }
  FiltrationAudit f = filtration_bound(h);
  ok = ok && f.ok;
  j["filtration_ok"] = f.ok;
  j["holds"] = ok;
  text += std::string("filtration ") + (f.ok ? "ok" : "FAIL") + "\n";
  emit(a, j, text);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite computations on SL2(Z/p^n Z): genera, class counts and bound audits"};
  app.require_subcommand(1, 1);
  Args a;
  auto common = [&](CLI::App* s) {
    s->add_option("--output", a.output, "text or json")->check(CLI::IsMember({"text", "json"}));
    s->add_option("--seed", a.seed, "random seed");
    s->add_option("--max-elements", a.max_elements, "element cap for materialized sets (also SL2_MAX_ELEMENTS)");
    s->add_option("--threads", a.threads, "worker threads")->check(CLI::PositiveNumber);
  };
  auto level = [&](CLI::App* s) {
    s->add_option("--p", a.p, "prime")->required();
    s->add_option("--n", a.n, "exponent of the level p^n");
  };
  auto* g = app.add_subcommand("genus", "genus and delta of a subgroup");
  level(g);
  g->add_option("--subgroup", a.subgroup, "subgroup spec")->required();
  common(g);
  auto* ct = app.add_subcommand("class-table", "conjugacy classes of SL2(Z/p^n)");
  level(ct);
  common(ct);
  auto* c = app.add_subcommand("count", "|H ∩ Conj(alpha)|");
  level(c);
  c->add_option("--subgroup", a.subgroup, "subgroup spec")->required();
  c->add_option("--class", a.cls, "sigma, tau, u or u^p^r")->required();
  common(c);
  auto* v = app.add_subcommand("verify", "run a verification suite");
  v->add_option("--suite", a.suite, "suite name or all")->required();
  v->add_option("--case", a.case_id, "single case id");
  v->add_option("--samples", a.samples, "sampled subgroups per level");
  common(v);
  auto* b = app.add_subcommand("bounds", "bound sequences, or the slim-subgroup bound audit for --subgroup");
  level(b);
  b->add_option("--subgroup", a.subgroup, "subgroup spec");
  common(b);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (a.max_elements) set_max_elements(*a.max_elements);
    if (*g) return cmd_genus(a);
    if (*ct) return cmd_class_table(a);
    if (*c) return cmd_count(a);
    if (*v) return cmd_verify(a);
    return cmd_bounds(a);
  } catch (const Usage& e) {
    std::cerr << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const FeasibilityError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
