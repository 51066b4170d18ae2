#include "sl2/group.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_set>

namespace sl2 {

ElementSet::ElementSet(GroupCtx ctx, std::vector<Code> codes)
    : ctx_(std::move(ctx)), codes_(std::move(codes)) {
  std::sort(codes_.begin(), codes_.end());
  codes_.erase(std::unique(codes_.begin(), codes_.end()), codes_.end());
}

bool ElementSet::contains(Code c) const {
  return std::binary_search(codes_.begin(), codes_.end(), c);
}

bool ElementSet::contains(const Mat2& x) const {
  check_same(x, ctx_);
  return contains(encode(x));
}

std::vector<Mat2> ElementSet::matrices() const {
  std::vector<Mat2> out;
  out.reserve(codes_.size());
  for (Code c : codes_) out.push_back(decode(c, ctx_));
  return out;
}

std::size_t intersection_size(const ElementSet& x, const ElementSet& y) {
  if (x.ctx() != y.ctx()) throw ContextMismatch("intersection of sets at different levels");
  const ElementSet& small = x.size() <= y.size() ? x : y;
  const ElementSet& big = x.size() <= y.size() ? y : x;
  std::size_t k = 0;
  for (Code c : small)
    if (big.contains(c)) ++k;
  return k;
}

ElementSet reduce_set(const ElementSet& s, const GroupCtx& dst) {
  if (dst.p() != s.ctx().p() || dst.n() > s.ctx().n())
    throw InvalidReduction("reduce_set to an incompatible level");
  std::vector<Code> out;
  out.reserve(s.size());
  for (Code c : s) out.push_back(reduce_code(c, s.ctx(), dst));
  return ElementSet(dst, std::move(out));
}

ConjClassRef ConjClassRef::of_u_power(const GroupCtx& c, int r) {
  if (r < 0 || r + 1 > c.n()) throw InvalidArgument("u^(p^r) needs r + 1 <= n");
  ConjClassRef ref{ClassKind::u_power, c};
  ref.r = r;
  return ref;
}

ConjClassRef ConjClassRef::of_custom(const GroupCtx& c, const Mat2& rep) {
  if (!in_sl2(rep, c)) throw InvalidArgument("custom class representative not in SL2");
  ConjClassRef ref{ClassKind::custom, c};
  ref.rep_ = rep;
  return ref;
}

Mat2 ConjClassRef::rep() const {
  switch (kind) {
    case ClassKind::sigma: return sigma(ctx);
    case ClassKind::tau: return tau(ctx);
    case ClassKind::u_power: return unipotent_power(ctx, ctx.pk(r));
    case ClassKind::neg_sigma: return mat_neg(sigma(ctx), ctx);
    case ClassKind::neg_tau: return mat_neg(tau(ctx), ctx);
    case ClassKind::neg_u: return mat_neg(unipotent(ctx), ctx);
    case ClassKind::u_square: return unipotent_power(ctx, 2);
    case ClassKind::custom: return rep_;
  }
  return rep_;
}

std::string ConjClassRef::name() const {
  switch (kind) {
    case ClassKind::sigma: return "sigma";
    case ClassKind::tau: return "tau";
    case ClassKind::u_power: return r == 0 ? "u" : "u^p^" + std::to_string(r);
    case ClassKind::neg_sigma: return "-sigma";
    case ClassKind::neg_tau: return "-tau";
    case ClassKind::neg_u: return "-u";
    case ClassKind::u_square: return "u^2";
    case ClassKind::custom: return "[" + format_signed(rep_) + "]";
  }
  return "?";
}

BigInt group_order(std::uint64_t p, int n) { return GroupCtx(p, n).group_order(); }

std::vector<Code> close_codes(const std::vector<Code>& gens, const GroupCtx& ctx,
                              std::uint64_t cap) {
  Code one = encode(identity(ctx));
  std::unordered_set<Code> seen{one};
  std::vector<Code> order{one};
  for (std::size_t i = 0; i < order.size(); ++i) {
    Code x = order[i];
    for (Code g : gens) {
      Code y = mul_code(x, g, ctx);
      if (seen.insert(y).second) {
        order.push_back(y);
        if (order.size() > cap)
          throw FeasibilityError("closure at modulus " + std::to_string(ctx.modulus()) +
                                     " exceeds the element cap",
                                 cap);
      }
    }
  }
  return order;
}

ElementSet enumerate_group(const GroupCtx& ctx) {
  if (!ctx.packable())
    throw FeasibilityError("group enumeration needs modulus <= 65536", max_elements());
  if (ctx.group_order() > max_elements())
    throw FeasibilityError("SL2(Z/" + std::to_string(ctx.modulus()) + ") has " +
                               ctx.group_order().str() + " elements",
                           max_elements());
  auto codes = close_codes({encode(unipotent(ctx)), encode(unipotent_t(ctx))}, ctx,
                           max_elements());
  return ElementSet(ctx, std::move(codes));
}

namespace {

BigInt pw(std::uint64_t p, int e) { return boost::multiprecision::pow(BigInt(p), e); }

}  // namespace

BigInt conj_class_size_formula(const ConjClassRef& ref) {
  const std::uint64_t p = ref.ctx.p();
  const int n = ref.ctx.n();
  switch (ref.kind) {
    case ClassKind::sigma:
      if (p == 2) return n == 1 ? BigInt(3) : 3 * pw(2, 2 * n - 3);
      return (p % 4 == 3 ? BigInt(p - 1) : BigInt(p + 1)) * pw(p, 2 * n - 1);
    case ClassKind::tau:
      if (p == 3) return 4 * pw(3, 2 * n - 2);
      return (p % 3 == 2 ? BigInt(p - 1) : BigInt(p + 1)) * pw(p, 2 * n - 1);
    case ClassKind::u_power: {
      int m = n - ref.r;
      if (p == 2) {
        if (m == 1) return 3;
        if (m == 2) return 6;
        return 3 * pw(2, 2 * m - 4);
      }
      return BigInt(p * p - 1) / 2 * pw(p, 2 * m - 2);
    }
    default:
      throw PreconditionError("no closed form for class " + ref.name() + "; use brute force");
  }
}

BigInt centralizer_order_formula(const ConjClassRef& ref) {
  const std::uint64_t p = ref.ctx.p();
  const int n = ref.ctx.n();
  switch (ref.kind) {
    case ClassKind::sigma:
      if (p == 2) return n == 1 ? BigInt(2) : pw(2, n + 1);
      return (p % 4 == 3 ? BigInt(p + 1) : BigInt(p - 1)) * pw(p, n - 1);
    case ClassKind::tau:
      if (p == 3) return 2 * pw(3, n);
      return (p % 3 == 2 ? BigInt(p + 1) : BigInt(p - 1)) * pw(p, n - 1);
    case ClassKind::u_power:
      if (ref.r != 0) break;
      if (p == 2) {
        if (n == 1) return 2;
        if (n == 2) return 8;
        return pw(2, n + 2);
      }
      return 2 * pw(p, n);
    default:
      break;
  }
  throw PreconditionError("no closed-form centralizer for class " + ref.name());
}

ElementSet orbit_under(const Mat2& rep, const std::vector<Mat2>& conjugators,
                       const GroupCtx& ctx) {
  if (!ctx.packable()) throw FeasibilityError("orbit needs modulus <= 65536", max_elements());
  std::vector<std::pair<Code, Code>> gs;  // (g^-1, g)
  for (const Mat2& g : conjugators) gs.emplace_back(encode(mat_inv(g, ctx)), encode(g));
  const std::uint64_t cap = max_elements();
  Code start = encode(rep);
  std::unordered_set<Code> seen{start};
  std::vector<Code> order{start};
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (auto [gi, g] : gs) {
      Code y = mul_code(mul_code(gi, order[i], ctx), g, ctx);
      if (seen.insert(y).second) {
        order.push_back(y);
        if (order.size() > cap) throw FeasibilityError("conjugacy orbit exceeds the cap", cap);
      }
    }
  }
  return ElementSet(ctx, std::move(order));
}

ElementSet conj_class_brute(const Mat2& rep, const GroupCtx& ctx) {
  if (!in_sl2(rep, ctx)) throw InvalidArgument("class representative not in SL2");
  return orbit_under(rep, {unipotent(ctx), unipotent_t(ctx)}, ctx);
}

std::shared_ptr<const ElementSet> class_set(const Mat2& rep, const GroupCtx& ctx) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint64_t, int, Code>, std::shared_ptr<const ElementSet>> cache;
  auto key = std::make_tuple(ctx.p(), ctx.n(), encode(rep));
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto set = std::make_shared<const ElementSet>(conj_class_brute(rep, ctx));
  // a class is the same set whichever member we started from
  std::lock_guard<std::mutex> lk(mu);
  cache.emplace(key, set);
  return set;
}

std::shared_ptr<const ElementSet> class_set(const ConjClassRef& ref) {
  return class_set(ref.rep(), ref.ctx);
}

std::vector<std::uint64_t> unit_group_generators(const GroupCtx& ctx) {
  const std::uint64_t p = ctx.p(), m = ctx.modulus();
  if (p == 2) {
    if (ctx.n() == 1) return {};
    if (ctx.n() == 2) return {3};
    return {m - 1, 5};
  }
  for (std::uint64_t g = 2; g < p; ++g) {
    bool prim = true;
    std::uint64_t k = p - 1;
    for (std::uint64_t q = 2; q <= k; ++q) {
      if (k % q) continue;
      if (pow_mod(g, (p - 1) / q, p) == 1) prim = false;
      while (k % q == 0) k /= q;
    }
    if (!prim) continue;
    if (ctx.n() >= 2 && pow_mod(g, p - 1, p * p) == 1) continue;
    return {g};
  }
  return {};
}

std::vector<Mat2> gl2_generators(const GroupCtx& ctx) {
  std::vector<Mat2> gs{unipotent(ctx), unipotent_t(ctx)};
  for (std::uint64_t g : unit_group_generators(ctx))
    gs.push_back(make_mat(ctx, static_cast<std::int64_t>(g), 0, 0, 1));
  return gs;
}

std::vector<ElementSet> all_classes(const GroupCtx& ctx) {
  ElementSet g = enumerate_group(ctx);
  std::unordered_set<Code> done;
  std::vector<ElementSet> out;
  for (Code c : g) {
    if (done.count(c)) continue;
    ElementSet cls = conj_class_brute(decode(c, ctx), ctx);
    for (Code x : cls) done.insert(x);
    out.push_back(std::move(cls));
  }
  return out;
}

BigInt centralizer_order_brute(const Mat2& x, const GroupCtx& ctx) {
  ElementSet g = enumerate_group(ctx);
  Code xc = encode(x);
  std::uint64_t k = 0;
  for (Code c : g)
    if (mul_code(c, xc, ctx) == mul_code(xc, c, ctx)) ++k;
  return k;
}

}  // namespace sl2
