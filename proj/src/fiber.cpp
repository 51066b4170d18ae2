#include "sl2/fiber.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

namespace sl2 {

namespace {

int level_of(std::uint64_t mod, std::uint64_t p) {
  int k = 0;
  std::uint64_t q = 1;
  while (q < mod) {
    q *= p;
    ++k;
  }
  if (q != mod) throw ContextMismatch("modulus is not a power of p");
  return k;
}

Mat2 rep_at(ClassKind kind, int r, const GroupCtx& ctx) {
  switch (kind) {
    case ClassKind::sigma: return sigma(ctx);
    case ClassKind::tau: return tau(ctx);
    case ClassKind::u_power: return unipotent_power(ctx, ctx.pk(r));
    default: throw InvalidArgument("fiber analysis covers sigma, tau and u^(p^r) only");
  }
}

std::uint64_t ipow(std::uint64_t p, int e) {
  std::uint64_t q = 1;
  for (int i = 0; i < e; ++i) q *= p;
  return q;
}

// class element at level top lifting (or reducing) d.alpha
Code alpha_top(const FiberDescriptor& d, const ElementSet& cls_top) {
  const GroupCtx top = d.top();
  int l = level_of(d.alpha.mod, d.p);
  GroupCtx lc(d.p, l);
  if (!class_set(rep_at(d.kind, d.r, lc), lc)->contains(d.alpha))
    throw PreconditionError("alpha " + format_signed(d.alpha) + " is not in the class");
  if (l >= top.n()) return encode(reduce_mod(d.alpha, lc, top));
  Code target = encode(d.alpha);
  for (Code c : cls_top)
    if (reduce_code(c, top, lc) == target) return c;
  throw ConsistencyError("class element does not lift");
}

using Entries = std::array<std::uint64_t, 4>;

}  // namespace

FiberDescriptor FiberDescriptor::standard(ClassKind kind, std::uint64_t p, int r, int n, int m) {
  FiberDescriptor d{kind, {}, p, r, n, m};
  d.alpha = rep_at(kind, r, d.top());
  return d;
}

Mat2 FiberDescriptor::class_rep(const GroupCtx& ctx) const { return rep_at(kind, r, ctx); }

bool fiber_hypotheses_hold(ClassKind kind, std::uint64_t p, int r, int n, int m) {
  if (kind != ClassKind::sigma && kind != ClassKind::tau && kind != ClassKind::u_power) return false;
  if (!is_prime(p) || r < 0 || m < 1 || !(m < n) || n > 2 * m) return false;
  if (kind != ClassKind::u_power && r != 0) return false;
  if (p == 2 && kind == ClassKind::sigma && m < 2) return false;
  if (p == 2 && kind == ClassKind::u_power && m < 3) return false;
  return true;
}

void check_fiber_hypotheses(ClassKind kind, std::uint64_t p, int r, int n, int m) {
  if (!fiber_hypotheses_hold(kind, p, r, n, m))
    throw PreconditionError("fiber structure needs m < n <= 2m (p = 2: m >= 2 for sigma, m >= 3 "
                            "for u), got p=" + std::to_string(p) + " r=" + std::to_string(r) +
                            " n=" + std::to_string(n) + " m=" + std::to_string(m));
}

ElementSet fiber_translate(const FiberDescriptor& d) {
  check_fiber_hypotheses(d.kind, d.p, d.r, d.n, d.m);
  const GroupCtx top = d.top(), mid = d.mid();
  if (!top.packable()) throw FeasibilityError("level too large to enumerate", max_elements());
  auto cls = class_set(d.class_rep(top), top);
  Code a = alpha_top(d, *cls);
  Code key = reduce_code(a, top, mid);
  Code ainv = inv_code(a, top);
  std::vector<Code> out;
  for (Code c : *cls)
    if (reduce_code(c, top, mid) == key) out.push_back(mul_code(ainv, c, top));
  return ElementSet(top, std::move(out));
}

ElementSet commutator_form(const FiberDescriptor& d) {
  check_fiber_hypotheses(d.kind, d.p, d.r, d.n, d.m);
  const GroupCtx top = d.top();
  auto cls = class_set(d.class_rep(top), top);
  Mat2 beta = mat_inv(decode(alpha_top(d, *cls), top), top);
  const std::uint64_t M = top.modulus(), q = ipow(d.p, d.r + d.n - d.m), pm = ipow(d.p, d.m);
  const double work = std::pow(static_cast<double>(q), 4);
  if (work > static_cast<double>(max_elements()))
    throw FeasibilityError("commutator form needs " + std::to_string(static_cast<long long>(work)) +
                               " matrices X",
                           max_elements());
  auto mm = [&](std::uint64_t x, std::uint64_t y) { return mul_mod(x, y, M); };
  std::vector<Code> out;
  for (std::uint64_t x0 = 0; x0 < q; ++x0)
    for (std::uint64_t x1 = 0; x1 < q; ++x1)
      for (std::uint64_t x2 = 0; x2 < q; ++x2)
        for (std::uint64_t x3 = 0; x3 < q; ++x3) {
          // X beta - beta X
          std::uint64_t c0 = (mm(x0, beta.a) + mm(x1, beta.c) + 2 * M - mm(beta.a, x0) - mm(beta.b, x2)) % M;
          std::uint64_t c1 = (mm(x0, beta.b) + mm(x1, beta.d) + 2 * M - mm(beta.a, x1) - mm(beta.b, x3)) % M;
          std::uint64_t c2 = (mm(x2, beta.a) + mm(x3, beta.c) + 2 * M - mm(beta.c, x0) - mm(beta.d, x2)) % M;
          std::uint64_t c3 = (mm(x2, beta.b) + mm(x3, beta.d) + 2 * M - mm(beta.c, x1) - mm(beta.d, x3)) % M;
          Mat2 v{(1 + mm(pm, c0)) % M, mm(pm, c1), mm(pm, c2), (1 + mm(pm, c3)) % M, M};
          out.push_back(encode(v));
        }
  return ElementSet(top, std::move(out));
}

ElementSet explicit_form(ClassKind kind, std::uint64_t p, int r, int n, int m) {
  check_fiber_hypotheses(kind, p, r, n, m);
  const GroupCtx top(p, r + n);
  const std::int64_t q = static_cast<std::int64_t>(ipow(p, n - m));
  const std::int64_t s = static_cast<std::int64_t>(ipow(p, r + m));
  std::vector<Code> out;
  for (std::int64_t a = 0; a < q; ++a)
    for (std::int64_t b = 0; b < q; ++b) {
      Mat2 x;
      switch (kind) {
        case ClassKind::sigma: x = make_mat(top, 1 + s * a, s * b, s * b, 1 - s * a); break;
        case ClassKind::tau: x = make_mat(top, 1 + s * a, s * b, s * (b - a), 1 - s * a); break;
        default: x = make_mat(top, 1 + s * a, s * b, 0, 1 - s * a); break;
      }
      out.push_back(encode(x));
    }
  return ElementSet(top, std::move(out));
}

ElementSet fiber_group(const FiberDescriptor& d) {
  ElementSet v = fiber_translate(d);
  const GroupCtx top = d.top();
  const std::uint64_t want = ipow(d.p, 2 * (d.n - d.m));
  if (v.size() != want)
    throw ConsistencyError("fiber has " + std::to_string(v.size()) + " elements, expected " +
                           std::to_string(want));
  if (!v.contains(identity(top))) throw ConsistencyError("fiber translate misses the identity");
  const std::uint64_t s = ipow(d.p, d.r + d.m);
  for (const Mat2& x : v.matrices())
    if ((x.a + top.modulus() - 1) % s || x.b % s || x.c % s || (x.d + top.modulus() - 1) % s)
      throw ConsistencyError("fiber element " + format_signed(x) + " is not 1 mod p^(r+m)");
  if (v.size() * v.size() <= max_elements())
    for (Code x : v)
      for (Code y : v)
        if (!v.contains(mul_code(x, y, top)))
          throw ConsistencyError("fiber translate is not closed under multiplication");
  if (std::pow(static_cast<double>(ipow(d.p, d.r + d.n - d.m)), 4) <=
      static_cast<double>(max_elements()))
    if (!(commutator_form(d) == v)) throw ConsistencyError("fiber differs from commutator form");
  const GroupCtx low = d.low();
  auto cls = class_set(d.class_rep(top), top);
  if (reduce_code(alpha_top(d, *cls), top, low) == encode(d.class_rep(low)))
    if (!(explicit_form(d.kind, d.p, d.r, d.n, d.m) == v))
      throw ConsistencyError("fiber differs from the explicit parametrisation");
  return v;
}

bool verify_orthogonality(const FiberDescriptor& d) {
  ElementSet v = fiber_translate(d);
  const GroupCtx top = d.top();
  const std::uint64_t q = ipow(d.p, d.n - d.m), s = ipow(d.p, d.r + d.m), pr = ipow(d.p, d.r);
  const std::uint64_t M = top.modulus();
  std::vector<Entries> w;
  for (const Mat2& x : v.matrices())
    w.push_back({((x.a + M - 1) / s) % q, (x.b / s) % q, (x.c / s) % q, ((x.d + M - 1) / s) % q});
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());

  auto cls = class_set(d.class_rep(top), top);
  Mat2 a = decode(alpha_top(d, *cls), top);
  Entries al;
  if (d.kind == ClassKind::u_power)
    al = {((a.a + M - 1) / pr) % q, (a.b / pr) % q, (a.c / pr) % q, ((a.d + M - 1) / pr) % q};
  else
    al = {a.a % q, a.b % q, a.c % q, a.d % q};

  std::vector<Entries> perp;
  for (std::uint64_t b0 = 0; b0 < q; ++b0)
    for (std::uint64_t b1 = 0; b1 < q; ++b1)
      for (std::uint64_t b2 = 0; b2 < q; ++b2)
        for (std::uint64_t b3 = 0; b3 < q; ++b3) {
          if ((b0 + b3) % q) continue;
          // Tr(B A) = b0 a0 + b1 a2 + b2 a1 + b3 a3
          if ((b0 * al[0] + b1 * al[2] + b2 * al[1] + b3 * al[3]) % q) continue;
          perp.push_back({b0, b1, b2, b3});
        }
  return perp == w;
}

std::set<std::size_t> class_fiber_sizes(ClassKind kind, std::uint64_t p, int r, int hi, int lo) {
  if (lo < 1 || lo >= hi) throw InvalidArgument("need 1 <= lo < hi");
  GroupCtx h(p, hi), l(p, lo);
  auto cls = class_set(rep_at(kind, r, h), h);
  std::map<Code, std::size_t> count;
  for (Code c : *cls) ++count[reduce_code(c, h, l)];
  std::set<std::size_t> out;
  for (auto& [k, v] : count) out.insert(v);
  return out;
}

std::uint64_t recovery_count(ClassKind kind, std::uint64_t p, int r, int n, int m) {
  check_fiber_hypotheses(kind, p, r, n, m);
  const GroupCtx top(p, r + n), mid(p, r + m), low(p, r + n - m);
  if (!top.packable()) throw FeasibilityError("level too large to enumerate", max_elements());
  auto cls = class_set(rep_at(kind, r, top), top);
  std::map<Code, std::vector<Code>> buckets;
  for (Code c : *cls) buckets[reduce_code(c, top, mid)].push_back(c);
  std::map<Code, std::vector<Code>> by_low;
  for (auto& [key, elems] : buckets) {
    Code ainv = inv_code(elems.front(), top);
    std::vector<Code> vset;
    for (Code c : elems) vset.push_back(mul_code(ainv, c, top));
    std::sort(vset.begin(), vset.end());
    Code lk = reduce_code(key, mid, low);
    auto it = by_low.find(lk);
    if (it == by_low.end())
      by_low.emplace(lk, std::move(vset));
    else if (it->second != vset)
      throw ConsistencyError("V depends on more than alpha mod p^(r+n-m)");
  }
  const auto& target = by_low.at(encode(rep_at(kind, r, low)));
  std::uint64_t k = 0;
  for (auto& [lk, vset] : by_low)
    if (vset == target) ++k;
  return k;
}

std::uint64_t recovery_count_formula(ClassKind kind, std::uint64_t p, int r, int n, int m) {
  check_fiber_hypotheses(kind, p, r, n, m);
  const int k = n - m;
  switch (kind) {
    case ClassKind::sigma:
      if (p >= 3) return 2;
      return k == 1 ? 1 : k == 2 ? 2 : 4;
    case ClassKind::tau:
      if (p == 3) return k == 1 ? 1 : 3;
      if (p == 2 && m < 2) throw PreconditionError("tau at p = 2 needs m >= 2");
      return 2;
    default:
      if (p >= 3) return (p - 1) / 2 * ipow(p, k - 1);
      return k == 1 ? 1 : k == 2 ? 2 : ipow(2, k - 2);
  }
}

ElementSet recovery_set(ClassKind kind, std::uint64_t p, int r, int n) {
  const GroupCtx ctx(p, r + n);
  if (kind != ClassKind::u_power && r != 0) throw InvalidArgument("r = 0 for sigma and tau");
  auto cls = class_set(rep_at(kind, r, ctx), ctx);
  const std::uint64_t M = ctx.modulus(), pr = ipow(p, r);
  std::vector<Code> out;
  for (const Mat2& x : cls->matrices()) {
    bool keep = false;
    switch (kind) {
      case ClassKind::sigma: keep = x.d == x.a && (x.b + x.c) % M == 0; break;
      case ClassKind::tau: keep = (x.b + x.c) % M == 0 && x.d == (x.a + M - x.b) % M; break;
      default:
        keep = x.c == 0 && x.a == x.d && (x.a + M - 1) % pr == 0 && x.b % pr == 0;
        break;
    }
    if (keep) out.push_back(encode(x));
  }
  return ElementSet(ctx, std::move(out));
}

ElementSet recovery_set_listed(ClassKind kind, std::uint64_t p, int r, int n) {
  const GroupCtx ctx(p, r + n);
  std::vector<Code> out;
  auto add = [&](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    out.push_back(encode(make_mat(ctx, a, b, c, d)));
  };
  const std::int64_t h = n >= 1 ? static_cast<std::int64_t>(ipow(p, n - 1)) : 1;
  switch (kind) {
    case ClassKind::sigma:
      add(0, 1, -1, 0);
      if (p >= 3) {
        add(0, -1, 1, 0);
      } else if (n == 2) {
        add(2, 1, -1, 2);
      } else if (n >= 3) {
        add(0, 1 + h, -1 + h, 0);
        add(h, 1, -1, h);
        add(h, 1 + h, -1 + h, h);
      }
      break;
    case ClassKind::tau:
      add(1, 1, -1, 0);
      if (p != 3) {
        add(0, -1, 1, 1);
      } else if (n >= 2) {
        add(1 + h, 1 - h, -1 + h, -h);
        add(1 - h, 1 + h, -1 - h, h);
      }
      break;
    default: {
      const std::int64_t pr = static_cast<std::int64_t>(ipow(p, r));
      const std::uint64_t pn = ipow(p, n);
      if (p >= 3 || n >= 3) {
        const std::int64_t e = p == 2 ? static_cast<std::int64_t>(ipow(2, r + n - 1)) : 0;
        for (std::uint64_t s = 1; s < pn; s += (p == 2 ? 2 : 1)) {
          if (s % p == 0) continue;
          std::int64_t sq = static_cast<std::int64_t>(mul_mod(s, s, pn));
          add(1, pr * sq, 0, 1);
          if (p == 2) add(1 + e, pr * sq, 0, 1 + e);
        }
      } else {
        add(1, pr, 0, 1);
        if (n == 2) add(1 + 2 * pr, pr, 0, 1 + 2 * pr);
      }
      break;
    }
  }
  return ElementSet(ctx, std::move(out));
}

}  // namespace sl2
