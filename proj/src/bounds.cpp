#include "sl2/bounds.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <tuple>
#include <unordered_map>

namespace sl2 {

std::string to_string(BoundKind k) {
  switch (k) {
    case BoundKind::a_sigma_p: return "a_sigma_p";
    case BoundKind::a_tau_p: return "a_tau_p";
    case BoundKind::a_tau_3: return "a_tau_3";
    case BoundKind::a_u_p: return "a_u_p";
    case BoundKind::a_u_2: return "a_u_2";
    case BoundKind::a_sigma_2: return "a_sigma_2";
    case BoundKind::a_tau_2: return "a_tau_2";
    case BoundKind::b_u_2: return "b_u_2";
  }
  return "?";
}

BoundKind parse_bound_kind(const std::string& s) {
  for (BoundKind k : {BoundKind::a_sigma_p, BoundKind::a_tau_p, BoundKind::a_tau_3, BoundKind::a_u_p,
                      BoundKind::a_u_2, BoundKind::a_sigma_2, BoundKind::a_tau_2, BoundKind::b_u_2})
    if (to_string(k) == s) return k;
  throw ParseError("unknown bound kind '" + s + "'");
}

namespace {

BigInt bpow(std::uint64_t p, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

std::string domain_text(BoundKind k) {
  switch (k) {
    case BoundKind::a_sigma_p: return "a_sigma_p needs p >= 3 and n >= 2";
    case BoundKind::a_tau_p: return "a_tau_p needs p >= 5 and n >= 2";
    case BoundKind::a_tau_3: return "a_tau_3 needs p = 3 and n >= 2";
    case BoundKind::a_u_p: return "a_u_p needs p >= 3 and n >= 2";
    case BoundKind::a_u_2: return "a_u_2 needs p = 2 and n >= 6";
    case BoundKind::a_sigma_2: return "a_sigma_2 needs p = 2 and n >= 3";
    case BoundKind::a_tau_2: return "a_tau_2 needs p = 2 and n >= 5";
    case BoundKind::b_u_2: return "b_u_2 needs p = 2 and n >= 4";
  }
  return "";
}

}  // namespace

bool bound_domain_ok(BoundKind kind, std::uint64_t p, int n) {
  if (!is_prime(p)) return false;
  switch (kind) {
    case BoundKind::a_sigma_p: return p >= 3 && n >= 2;
    case BoundKind::a_tau_p: return p >= 5 && n >= 2;
    case BoundKind::a_tau_3: return p == 3 && n >= 2;
    case BoundKind::a_u_p: return p >= 3 && n >= 2;
    case BoundKind::a_u_2: return p == 2 && n >= 6;
    case BoundKind::a_sigma_2: return p == 2 && n >= 3;
    case BoundKind::a_tau_2: return p == 2 && n >= 5;
    case BoundKind::b_u_2: return p == 2 && n >= 4;
  }
  return false;
}

BigInt bound_sequence(BoundKind kind, std::uint64_t p, int n) {
  if (!bound_domain_ok(kind, p, n))
    throw PreconditionError(domain_text(kind) + " (got p=" + std::to_string(p) +
                            ", n=" + std::to_string(n) + ")");
  const int l = n / 2, lp = (n + 1) / 2;
  const BigInt P = p;
  switch (kind) {
    case BoundKind::a_sigma_p:
    case BoundKind::a_tau_p:
      return 2 * bpow(p, 2 * (n - l)) + 2 * (l - 1) * (P * P - 1) * bpow(p, n - 1);
    case BoundKind::a_tau_3:
      if (n == 2) return 9;
      return (n % 2 == 0 ? 4 * n - 11 : 4 * n - 9) * bpow(3, n);
    case BoundKind::a_u_p:
      if (n % 2 == 0) return (P - 1) / 2 * (2 * bpow(p, 3 * l - 1) - bpow(p, n));
      return (P - 1) / 2 * (bpow(p, 3 * l + 1) + bpow(p, 3 * l) - bpow(p, n));
    case BoundKind::a_u_2:
      return (n % 2 == 0 ? 1 : 3) * bpow(2, 3 * l - 1) - bpow(2, n + 1);
    case BoundKind::a_sigma_2:
      if (n == 3) return 8;
      if (n == 4) return 32;
      return (n % 2 == 0 ? 3 * (l - 2) : 3 * l - 4) * bpow(2, n + 1);
    case BoundKind::a_tau_2:
      return (n % 2 == 0 ? 3 * lp - 5 : 3 * lp - 7) * bpow(2, n + 1);
    case BoundKind::b_u_2:
      return (n % 2 == 0 ? 3 : 1) * bpow(2, 3 * lp - 2) - bpow(2, n + 1);
  }
  return 0;
}

Correction correction_term(BoundKind kind, std::uint64_t p, int n) {
  if (!bound_domain_ok(kind, p, n)) bound_sequence(kind, p, n);
  switch (kind) {
    case BoundKind::a_sigma_p:
    case BoundKind::a_tau_p: return {1, bpow(p, n - 1), 2};
    case BoundKind::a_tau_3: return {1, bpow(p, n - 1), 1};
    case BoundKind::a_u_p: return {1, bpow(p, n - 1), (p - 1) / 2};
    case BoundKind::a_sigma_2: return {2, bpow(2, n - 2), 2};
    case BoundKind::a_tau_2: return {3, bpow(2, n - 2), 8};
    case BoundKind::a_u_2: return {3, bpow(2, n - 1), 2};
    case BoundKind::b_u_2: return {3, bpow(2, n - 3), 4};
  }
  return {1, 0, 0};
}

BigInt corollary_rhs(BoundKind kind, std::uint64_t p, int n, const BigInt& reduced) {
  Correction c = correction_term(kind, p, n);
  return bound_sequence(kind, p, n) + c.coefficient * (reduced - c.offset);
}

std::vector<BoundKind> applicable_bounds(ClassKind kind, std::uint64_t p, int n) {
  std::vector<BoundKind> out;
  auto add = [&](BoundKind k) {
    if (bound_domain_ok(k, p, n)) out.push_back(k);
  };
  switch (kind) {
    case ClassKind::sigma:
      add(BoundKind::a_sigma_p);
      add(BoundKind::a_sigma_2);
      break;
    case ClassKind::tau:
      add(BoundKind::a_tau_p);
      add(BoundKind::a_tau_3);
      add(BoundKind::a_tau_2);
      break;
    case ClassKind::u_power:
      add(BoundKind::a_u_p);
      add(BoundKind::b_u_2);
      add(BoundKind::a_u_2);
      break;
    default: break;
  }
  return out;
}

namespace {

using Codes = std::vector<Code>;

Mat2 class_rep(ClassKind kind, int r, const GroupCtx& ctx) {
  switch (kind) {
    case ClassKind::sigma: return sigma(ctx);
    case ClassKind::tau: return tau(ctx);
    case ClassKind::u_power: return unipotent_power(ctx, ctx.pk(r));
    default: throw InvalidArgument("bounds cover sigma, tau and u^(p^r) only");
  }
}

// class elements at one level grouped by their reduction to a lower level
using Buckets = std::unordered_map<Code, Codes>;

std::shared_ptr<const Buckets> class_buckets(const Mat2& rep, const GroupCtx& top, int key_level) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint64_t, int, Code, int>, std::shared_ptr<const Buckets>> cache;
  auto key = std::make_tuple(top.p(), top.n(), encode(rep), key_level);
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto cls = class_set(rep, top);
  GroupCtx kc(top.p(), key_level);
  auto b = std::make_shared<Buckets>();
  for (Code c : *cls) (*b)[reduce_code(c, top, kc)].push_back(c);
  std::lock_guard<std::mutex> lk(mu);
  return cache.emplace(key, std::move(b)).first->second;
}

// x^-1 * (class elements congruent to x mod p^m), sorted
Codes fiber_v(Code x, const Buckets& b, const GroupCtx& top, const GroupCtx& mid) {
  const Codes& bucket = b.at(reduce_code(x, top, mid));
  Code xi = inv_code(x, top);
  Codes v;
  v.reserve(bucket.size());
  for (Code c : bucket) v.push_back(mul_code(xi, c, top));
  std::sort(v.begin(), v.end());
  return v;
}

// elements of the (sorted) set congruent to I mod p^k
Codes layer(const Codes& elems, const GroupCtx& top, int k) {
  if (k == 0) return elems;
  GroupCtx kc(top.p(), k);
  Code one = encode(identity(kc));
  Codes out;
  for (Code c : elems)
    if (reduce_code(c, top, kc) == one) out.push_back(c);
  return out;
}

Codes intersect(const Codes& a, const Codes& b) {
  Codes out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Codes minus(const Codes& a, const Codes& b) {
  Codes out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Codes reduce_codes(const Codes& a, const GroupCtx& top, int k) {
  GroupCtx kc(top.p(), k);
  Codes out;
  out.reserve(a.size());
  for (Code c : a) out.push_back(reduce_code(c, top, kc));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool subset_of(const Codes& a, const Codes& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

struct Audit {
  std::vector<ChainStep> steps;
  void le(const std::string& label, const BigInt& l, const BigInt& r) {
    steps.push_back({label, "<=", l, r, l <= r});
  }
  void eq(const std::string& label, const BigInt& l, const BigInt& r, bool ok) {
    steps.push_back({label, "==", l, r, ok});
  }
  void sub(const std::string& label, const Codes& a, const Codes& b) {
    steps.push_back({label, "subset", BigInt(a.size()), BigInt(b.size()), subset_of(a, b)});
  }
  bool ok() const {
    return std::all_of(steps.begin(), steps.end(), [](const ChainStep& s) { return s.ok; });
  }
};

// Everything needed for the Y_i / Z_i chains of one subgroup and class.
struct ChainData {
  const Subgroup& h;
  ClassKind kind;
  int r, n, N;
  GroupCtx top;
  Mat2 rep;
  Codes y0;
  std::map<int, Codes> ys;

  ChainData(const Subgroup& hh, ClassKind k, int rr)
      : h(hh), kind(k), r(rr), n(hh.ctx().n() - rr), N(hh.ctx().n()), top(hh.ctx()),
        rep(class_rep(k, rr, hh.ctx())) {
    y0 = intersect(h.elements().codes(), class_set(rep, top)->codes());
  }

  // {a in Y_0 : H_{N-i} = V_a^{N, N-i}}
  const Codes& y(int i) {
    if (i == 0) return y0;
    auto it = ys.find(i);
    if (it != ys.end()) return it->second;
    check_fiber_hypotheses(kind, top.p(), r, n, n - i);
    GroupCtx mid(top.p(), N - i);
    Codes hl = layer(h.elements().codes(), top, N - i);
    auto b = class_buckets(rep, top, N - i);
    std::map<Code, bool> memo;
    Codes out;
    for (Code a : y0) {
      Code key = reduce_code(a, top, mid);
      auto m = memo.find(key);
      if (m == memo.end()) m = memo.emplace(key, fiber_v(a, *b, top, mid) == hl).first;
      if (m->second) out.push_back(a);
    }
    return ys.emplace(i, std::move(out)).first->second;
  }

  BigInt ymod(int i, int k) { return reduce_codes(y(i), top, r + k).size(); }

  // |(H/H_{r+s}) ∩ Conj(alpha)|, computed on the image of H
  Codes reduced_class(int s) {
    GroupCtx sc(top.p(), r + s);
    Codes img = reduce_set(h.elements(), sc).codes();
    return intersect(img, class_set(class_rep(kind, r, sc), sc)->codes());
  }
};

BigInt pw(std::uint64_t p, int e) { return bpow(p, e); }

void setminus_steps(Audit& a, ChainData& d, int l) {
  for (int i1 = 0; i1 < l; ++i1)
    for (int i = i1 + 1; i <= l; ++i)
      for (int i2 = i; i2 <= l; ++i2) {
        Codes lhs = reduce_codes(minus(d.y(i1), d.y(i)), d.top, d.r + i2);
        Codes rhs = minus(reduce_codes(d.y(i1), d.top, d.r + i2), reduce_codes(d.y(i), d.top, d.r + i2));
        a.eq("(Y" + std::to_string(i1) + " \\ Y" + std::to_string(i) + ") mod p^(r+" +
                 std::to_string(i2) + ") = difference of reductions",
             lhs.size(), rhs.size(), lhs == rhs);
      }
}

// odd p, s = 1
BigInt chain_odd(Audit& a, ChainData& d, BoundKind kind, const BigInt& c, const Codes& red1) {
  const std::uint64_t p = d.top.p();
  const int n = d.n, l = n / 2;
  const BigInt P = p;
  BigInt decomposition = d.y(l).size();
  for (int i = 1; i <= l; ++i) {
    a.sub("Y" + std::to_string(i) + " within Y" + std::to_string(i - 1), d.y(i), d.y(i - 1));
    decomposition += minus(d.y(i - 1), d.y(i)).size();
  }
  a.eq("|Y0| = |Y_l| + sum |Y_(i-1) \\ Y_i|", d.y0.size(), decomposition,
       BigInt(d.y0.size()) == decomposition);
  a.le("|Y_l| <= p^(2(n-l)) |Y_l mod p^(r+l)|", d.y(l).size(), pw(p, 2 * (n - l)) * d.ymod(l, l));
  for (int i = 1; i <= l; ++i)
    a.le("|Y" + std::to_string(i - 1) + " \\ Y" + std::to_string(i) + "| <= p^(n-1) (|Y" +
             std::to_string(i - 1) + " mod| - |Y" + std::to_string(i) + " mod|) at p^(r+" +
             std::to_string(i) + ")",
         minus(d.y(i - 1), d.y(i)).size(), pw(p, n - 1) * (d.ymod(i - 1, i) - d.ymod(i, i)));
  setminus_steps(a, d, l);
  for (int i = 1; i <= l - 1; ++i)
    a.le("|Y" + std::to_string(i) + " mod p^(r+" + std::to_string(i + 1) + ")| - |Y" +
             std::to_string(i) + " mod p^(r+" + std::to_string(i) + ")| <= (p^2-1) |Y" +
             std::to_string(i) + " mod p^(r+" + std::to_string(i) + ")|",
         d.ymod(i, i + 1) - d.ymod(i, i), (P * P - 1) * d.ymod(i, i));
  for (int i = 1; i <= l; ++i) {
    BigInt rec;
    switch (kind) {
      case BoundKind::a_tau_3: rec = i == 1 ? 1 : 3; break;
      case BoundKind::a_u_p: rec = (P - 1) / 2 * pw(p, i - 1); break;
      default: rec = 2; break;
    }
    a.le("|Y" + std::to_string(i) + " mod p^(r+" + std::to_string(i) + ")| <= recovery bound",
         d.ymod(i, i), rec);
  }
  a.sub("Y0 mod p^(r+1) within (H/H_(r+1)) ∩ Conj", reduce_codes(d.y0, d.top, d.r + 1), red1);
  BigInt prop = (pw(p, 2 * (n - l)) - pw(p, n - 1)) * d.ymod(l, l) + pw(p, n - 1) * c;
  for (int i = 1; i <= l - 1; ++i) prop += (P * P - 1) * pw(p, n - 1) * d.ymod(i, i);
  a.le("|Y0| <= Y-chain estimate (s = 1)", d.y0.size(), prop);
  return prop;
}

BigInt chain_sigma2(Audit& a, ChainData& d, const Codes& red2) {
  const int n = d.n;
  const BigInt y1m = d.ymod(1, 2), y0m = d.ymod(0, 2);
  a.sub("Y1 within Y0", d.y(1), d.y0);
  a.le("|Y1| <= 2^(2(n-2)) |Y1 mod 4|", d.y(1).size(), pw(2, 2 * (n - 2)) * y1m);
  a.le("|Y0 \\ Y1| <= 2^(n-2) (|Y0 mod 4| - |Y1 mod 4|)", minus(d.y0, d.y(1)).size(),
       pw(2, n - 2) * (y0m - y1m));
  Codes lhs = reduce_codes(minus(d.y0, d.y(1)), d.top, 2);
  Codes rhs = minus(reduce_codes(d.y0, d.top, 2), reduce_codes(d.y(1), d.top, 2));
  a.eq("(Y0 \\ Y1) mod 4 = difference of reductions", lhs.size(), rhs.size(), lhs == rhs);
  a.le("|Y1 mod 4| <= 2", y1m, 2);
  a.sub("Y0 mod 4 within (H/H_2) ∩ Conj", reduce_codes(d.y0, d.top, 2), red2);
  BigInt est = (pw(2, 2 * (n - 2)) - pw(2, n - 2)) * y1m + pw(2, n - 2) * y0m;
  a.le("|Y0| <= (2^(2(n-2)) - 2^(n-2)) |Y1 mod 4| + 2^(n-2) |Y0 mod 4|", d.y0.size(), est);
  return est;
}

BigInt chain_bu2(Audit& a, ChainData& d, const Codes& red3) {
  const int n = d.n;
  const BigInt z1m = d.ymod(1, 3), z0m = d.ymod(0, 3);
  a.sub("Z1 within Z0", d.y(1), d.y0);
  a.le("|Z1| <= 2^(2(n-3)) |Z1 mod 2^(r+3)|", d.y(1).size(), pw(2, 2 * (n - 3)) * z1m);
  a.le("|Z0 \\ Z1| <= 2^(n-3) (|Z0 mod 2^(r+3)| - |Z1 mod 2^(r+3)|)", minus(d.y0, d.y(1)).size(),
       pw(2, n - 3) * (z0m - z1m));
  Codes lhs = reduce_codes(minus(d.y0, d.y(1)), d.top, d.r + 3);
  Codes rhs = minus(reduce_codes(d.y0, d.top, d.r + 3), reduce_codes(d.y(1), d.top, d.r + 3));
  a.eq("(Z0 \\ Z1) mod 2^(r+3) = difference of reductions", lhs.size(), rhs.size(), lhs == rhs);
  a.le("|Z1 mod 2^(r+3)| <= 4", z1m, 4);
  a.sub("Z0 mod 2^(r+3) within (H/H_(r+3)) ∩ Conj", reduce_codes(d.y0, d.top, d.r + 3), red3);
  BigInt est = (pw(2, 2 * (n - 3)) - pw(2, n - 3)) * z1m + pw(2, n - 3) * z0m;
  a.le("|Z0| <= (2^(2(n-3)) - 2^(n-3)) |Z1 mod| + 2^(n-3) |Z0 mod|", d.y0.size(), est);
  return est;
}

}  // namespace

SlimBoundAudit audit_slim_bound(const Subgroup& h, const ConjClassRef& alpha, BoundKind kind) {
  if (alpha.ctx != h.ctx()) throw ContextMismatch("class and subgroup at different levels");
  if (!is_slim(h)) throw PreconditionError("bound audit needs a slim subgroup");
  const std::uint64_t p = h.ctx().p();
  const int r = alpha.kind == ClassKind::u_power ? alpha.r : 0;
  const int n = h.ctx().n() - r;
  auto kinds = applicable_bounds(alpha.kind, p, n);
  if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end())
    throw PreconditionError(to_string(kind) + " does not apply to " + alpha.name() + " at p=" +
                            std::to_string(p) + ", n=" + std::to_string(n));

  ChainData d(h, alpha.kind, r);
  SlimBoundAudit out;
  out.kind = kind;
  out.r = r;
  out.n = n;
  out.count = d.y0.size();
  out.s = correction_term(kind, p, n).s;
  Codes red = d.reduced_class(out.s);
  out.reduced = red.size();
  out.rhs = corollary_rhs(kind, p, n, out.reduced);

  Audit a;
  std::optional<BigInt> est;
  switch (kind) {
    case BoundKind::a_sigma_p:
    case BoundKind::a_tau_p:
    case BoundKind::a_tau_3:
    case BoundKind::a_u_p: est = chain_odd(a, d, kind, out.reduced, red); break;
    case BoundKind::a_sigma_2:
      if (n <= 5) est = chain_sigma2(a, d, red);
      break;
    case BoundKind::b_u_2:
      if (n <= 6) est = chain_bu2(a, d, red);
      break;
    default: break;
  }
  out.chain_audited = est.has_value();
  if (est) a.le("chain estimate <= closed form", *est, out.rhs);
  a.le("|H ∩ Conj| <= " + to_string(kind) + " + correction", out.count, out.rhs);
  out.steps = std::move(a.steps);
  out.holds = std::all_of(out.steps.begin(), out.steps.end(), [](const ChainStep& s) { return s.ok; });
  return out;
}

std::vector<SlimBoundAudit> audit_slim_bounds(const Subgroup& h, const ConjClassRef& alpha) {
  const int r = alpha.kind == ClassKind::u_power ? alpha.r : 0;
  auto kinds = applicable_bounds(alpha.kind, h.ctx().p(), h.ctx().n() - r);
  if (kinds.empty())
    throw PreconditionError("no bound applies to " + alpha.name() + " at this level");
  std::vector<SlimBoundAudit> out;
  for (BoundKind k : kinds) out.push_back(audit_slim_bound(h, alpha, k));
  return out;
}

bool check_slim_bound(const Subgroup& h, const ConjClassRef& alpha) {
  auto audits = audit_slim_bounds(h, alpha);
  return std::all_of(audits.begin(), audits.end(), [](const SlimBoundAudit& a) { return a.holds; });
}

std::vector<ConjClassRef> bounded_classes(const GroupCtx& ctx) {
  std::vector<ConjClassRef> out;
  const std::uint64_t p = ctx.p();
  if (!applicable_bounds(ClassKind::sigma, p, ctx.n()).empty()) out.push_back(ConjClassRef::of_sigma(ctx));
  if (!applicable_bounds(ClassKind::tau, p, ctx.n()).empty()) out.push_back(ConjClassRef::of_tau(ctx));
  for (int r = 0; r + 1 <= ctx.n(); ++r)
    if (!applicable_bounds(ClassKind::u_power, p, ctx.n() - r).empty())
      out.push_back(ConjClassRef::of_u_power(ctx, r));
  return out;
}

FiltrationAudit filtration_bound(const Subgroup& h) {
  const GroupCtx& ctx = h.ctx();
  const std::uint64_t p = ctx.p();
  const int N = ctx.n();
  FiltrationAudit out;
  if (N < 2) return out;
  if (!is_slim(h)) throw PreconditionError("filtration bound needs a slim subgroup");
  std::vector<std::size_t> sz(N + 1);
  for (int k = 0; k <= N; ++k) sz[k] = layer(h.elements().codes(), ctx, k).size();
  for (int i = 1; i <= N; ++i) out.layer_orders.push_back(sz[i - 1] / sz[i]);
  for (int t = (p == 2 ? 2 : 1); t < N; ++t)
    for (int s = t + 1; s <= N; ++s) {
      BigInt q = sz[t] / sz[s];
      if (q > bpow(p, 2 * (s - t))) {
        out.ok = false;
        out.notes += "|H_" + std::to_string(t) + "/H_" + std::to_string(s) + "| = " + q.str() + "; ";
      }
    }
  for (int i = (p == 2 ? 3 : 2); i <= N; ++i) {
    std::size_t prev = sz[i - 1] / sz[i], cur = i < N ? sz[i] / sz[i + 1] : p * p;
    if (prev > cur || cur > p * p) {
      out.ok = false;
      out.notes += "layer " + std::to_string(i) + " breaks monotonicity; ";
    }
  }
  return out;
}

ShadowAudit fiber_image_shadow(const Subgroup& h, const ConjClassRef& alpha) {
  const GroupCtx& ctx = h.ctx();
  const std::uint64_t p = ctx.p();
  const int r = alpha.kind == ClassKind::u_power ? alpha.r : 0;
  const int n = ctx.n() - r;
  ShadowAudit out;
  for (int t = 1; t < n; ++t)
    for (int i = 1; i <= t && t + i <= n; ++i) {
      if (!fiber_hypotheses_hold(alpha.kind, p, r, t + i, t)) {
        ++out.skipped;
        continue;
      }
      GroupCtx L(p, r + t + i), K(p, r + t);
      Mat2 rep = class_rep(alpha.kind, r, L);
      Codes hb = reduce_set(h.elements(), L).codes();
      Codes x = intersect(hb, class_set(rep, L)->codes());
      Codes hl = layer(hb, L, r + t);
      auto b = class_buckets(rep, L, r + t);
      std::map<Code, Codes> fibers;
      for (Code c : x) fibers[reduce_code(c, L, K)].push_back(c);
      for (auto& [key, fib] : fibers) {
        if (fiber_v(fib.front(), *b, L, K) == hl) continue;
        ++out.checked;
        std::size_t img = reduce_codes(fib, L, r + t + 1).size();
        if (img > p) {
          out.ok = false;
          out.notes += "t=" + std::to_string(t) + " i=" + std::to_string(i) + ": image of " +
                       std::to_string(img) + " elements; ";
        }
      }
    }
  return out;
}

ShadowAudit fiber_count_shadow(const Subgroup& h, const ConjClassRef& alpha) {
  const GroupCtx& top = h.ctx();
  const std::uint64_t p = top.p();
  const int r = alpha.kind == ClassKind::u_power ? alpha.r : 0;
  const int n = top.n() - r, N = top.n();
  if (!is_slim(h)) throw PreconditionError("fiber count bound needs a slim subgroup");
  ShadowAudit out;
  if (n < 2) return out;
  Mat2 rep = class_rep(alpha.kind, r, top);
  Codes y0 = intersect(h.elements().codes(), class_set(rep, top)->codes());
  for (int i = 1; 2 * i <= n; ++i)
    for (int delta = 0; 2 * i + delta <= n; ++delta) {
      if (p == 2 && alpha.kind == ClassKind::tau && delta < 1) continue;
      if (!fiber_hypotheses_hold(alpha.kind, p, r, n, n - i)) {
        ++out.skipped;
        continue;
      }
      GroupCtx K(p, r + i + delta), mid(p, N - i);
      Codes hl = layer(h.elements().codes(), top, N - i);
      auto b = class_buckets(rep, top, N - i);
      std::map<Code, Codes> fibers;
      for (Code c : y0) fibers[reduce_code(c, top, K)].push_back(c);
      const BigInt cap = bpow(p, n - 1 - delta);
      for (auto& [key, fib] : fibers) {
        if (fiber_v(fib.front(), *b, top, mid) == hl) continue;
        ++out.checked;
        if (BigInt(fib.size()) > cap) {
          out.ok = false;
          out.notes += "i=" + std::to_string(i) + " delta=" + std::to_string(delta) + ": fiber of " +
                       std::to_string(fib.size()) + " > " + cap.str() + "; ";
        }
      }
    }
  return out;
}

int n_p_bound(std::uint64_t p) {
  if (!is_prime(p)) throw InvalidArgument("p must be prime");
  if (p >= 23) return 0;
  if (p >= 11) return 1;
  if (p == 7) return 2;
  if (p == 5) return 3;
  if (p == 3) return 5;
  return 11;
}

int n_prime(std::uint64_t p) { return p == 2 ? 10 : n_p_bound(p); }

}  // namespace sl2
