#include "sl2/genus.hpp"

#include <algorithm>

namespace sl2 {

int legendre(std::int64_t a, std::uint64_t p) {
  if (p % 2 == 0 || !is_prime(p)) throw InvalidArgument("legendre symbol needs an odd prime");
  std::int64_t r = a % static_cast<std::int64_t>(p);
  if (r < 0) r += static_cast<std::int64_t>(p);
  if (r == 0) return 0;
  return pow_mod(static_cast<std::uint64_t>(r), (p - 1) / 2, p) == 1 ? 1 : -1;
}

BigInt count_in_subgroup(const Subgroup& h, const Mat2& rep) {
  return intersection_size(h.elements(), *class_set(rep, h.ctx()));
}

BigInt count_in_subgroup(const Subgroup& h, const ConjClassRef& ref) {
  if (ref.ctx != h.ctx()) throw ContextMismatch("class and subgroup at different levels");
  return count_in_subgroup(h, ref.rep());
}

Rational class_ratio(const Subgroup& h, const Mat2& rep) {
  auto cls = class_set(rep, h.ctx());
  return Rational(BigInt(intersection_size(h.elements(), *cls)), BigInt(cls->size()));
}

namespace {

std::size_t coset_index_slot(const std::vector<Code>& g, Code c) {
  return static_cast<std::size_t>(std::lower_bound(g.begin(), g.end(), c) - g.begin());
}

}  // namespace

CosetSpace::CosetSpace(const Subgroup& h) : ctx_(h.ctx()), group_(enumerate_group(h.ctx())) {
  const auto& g = group_.codes();
  id_.assign(g.size(), UINT32_MAX);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (id_[i] != UINT32_MAX) continue;
    auto c = static_cast<std::uint32_t>(reps_.size());
    reps_.push_back(g[i]);
    for (Code x : h.elements()) id_[coset_index_slot(g, mul_code(g[i], x, ctx_))] = c;
  }
}

std::uint32_t CosetSpace::coset_of(Code g) const {
  return id_[coset_index_slot(group_.codes(), g)];
}

std::uint64_t CosetSpace::fixed_by(const Mat2& a) const {
  Code ac = encode(a);
  std::uint64_t k = 0;
  for (std::uint32_t c = 0; c < reps_.size(); ++c)
    if (coset_of(mul_code(ac, reps_[c], ctx_)) == c) ++k;
  return k;
}

std::uint64_t CosetSpace::orbits_of(const Mat2& a) const {
  Code ac = encode(a);
  std::vector<char> seen(reps_.size(), 0);
  std::uint64_t orbits = 0;
  for (std::uint32_t c = 0; c < reps_.size(); ++c) {
    if (seen[c]) continue;
    ++orbits;
    std::uint32_t d = c;
    while (!seen[d]) {
      seen[d] = 1;
      d = coset_of(mul_code(ac, reps_[d], ctx_));
    }
  }
  return orbits;
}

BigInt fix_points_direct(const Subgroup& h, const Mat2& a) {
  return CosetSpace(h).fixed_by(a);
}

BigInt fix_points_identity(const Subgroup& h, const Mat2& a) {
  auto cls = class_set(a, h.ctx());
  BigInt num = h.index() * BigInt(intersection_size(h.elements(), *cls));
  if (num % cls->size() != 0) throw ConsistencyError("fixed-point identity is not integral");
  return num / cls->size();
}

BigInt fix_points(const Subgroup& h, const Mat2& a) {
  BigInt d = fix_points_direct(h, a), i = fix_points_identity(h, a);
  if (d != i)
    throw ConsistencyError("fixed points of " + format_signed(a) + ": cosets give " + d.str() +
                           ", identity gives " + i.str());
  return d;
}

BigInt cusp_count_direct(const Subgroup& h) {
  return CosetSpace(h).orbits_of(unipotent(h.ctx()));
}

Rational cusp_ratio_formula(const Subgroup& h, int t) {
  const GroupCtx& ctx = h.ctx();
  if (t < 0) t = ctx.n();
  if (t > ctx.n()) throw InvalidArgument("cusp truncation beyond the level");
  const BigInt p = ctx.p();
  Rational sum = 0;
  BigInt ps = 1;  // p^s
  for (int s = 0; s < t; ++s) {
    sum += Rational(p - 1, ps * p) * class_ratio(h, unipotent_power(ctx, ctx.pk(s)));
    ps *= p;
  }
  return sum + Rational(BigInt(1), ps);
}

Rational cusp_orbit_ratio(const Subgroup& h) {
  Rational direct(cusp_count_direct(h), h.index());
  Rational formula = cusp_ratio_formula(h);
  if (direct != formula)
    throw ConsistencyError("cusp ratio mismatch: cosets " + direct.str() + ", formula " +
                           formula.str());
  return direct;
}

Rational delta(const Subgroup& h) {
  const GroupCtx& ctx = h.ctx();
  return Rational(1) - 3 * class_ratio(h, sigma(ctx)) - 4 * class_ratio(h, tau(ctx)) -
         6 * cusp_ratio_formula(h);
}

BigInt genus(const Subgroup& h) {
  if (!h.contains_minus_one()) throw PreconditionError("genus formula needs -1 in H");
  Rational g = 1 + Rational(h.index()) * delta(h) / 12;
  if (denominator(g) != 1 || g < 0)
    throw ConsistencyError("genus evaluates to " + g.str() + ", not a non-negative integer");
  return numerator(g);
}

BigInt genus_with_minus_one(const Subgroup& h) { return genus(with_minus_one(h)); }

Rational genus_by_definition(const Subgroup& h) {
  CosetSpace cs(h);
  const GroupCtx& ctx = h.ctx();
  Rational idx(BigInt(cs.size()));
  return 1 + idx / 12 - Rational(BigInt(cs.fixed_by(sigma(ctx))), 4) -
         Rational(BigInt(cs.fixed_by(tau(ctx))), 3) -
         Rational(BigInt(cs.orbits_of(unipotent(ctx))), 2);
}

Rational closed_form_genus(CartanKind kind, std::uint64_t p) {
  if (p < 5) throw PreconditionError("closed-form genera are stated for p >= 5");
  BigInt P = p;
  int m1 = legendre(-1, p), m3 = legendre(-3, p);
  switch (kind) {
    case CartanKind::B: return Rational(P - 6 - 3 * m1 - 4 * m3, 12);
    case CartanKind::C: return Rational(P * P - 8 * P + 11 - 4 * m3, 24);
    case CartanKind::D: return Rational(P * P - 10 * P + 23 + 6 * m1 + 4 * m3, 24);
  }
  return 0;
}

GenusReport genus_report(const Subgroup& h) {
  const GroupCtx& ctx = h.ctx();
  GenusReport r;
  r.order = h.order();
  r.index = h.index();
  auto cs = class_set(sigma(ctx), ctx), ct = class_set(tau(ctx), ctx);
  r.count_sigma = intersection_size(h.elements(), *cs);
  r.count_tau = intersection_size(h.elements(), *ct);
  r.cusp_ratio = cusp_ratio_formula(h);
  r.delta = Rational(1) - 3 * Rational(r.count_sigma, BigInt(cs->size())) -
            4 * Rational(r.count_tau, BigInt(ct->size())) - 6 * r.cusp_ratio;
  r.fix_sigma = fix_points_identity(h, sigma(ctx));
  r.fix_tau = fix_points_identity(h, tau(ctx));
  if (h.contains_minus_one()) r.genus = genus(h);
  return r;
}

}  // namespace sl2
