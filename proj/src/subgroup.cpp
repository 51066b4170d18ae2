#include "sl2/subgroup.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace sl2 {

namespace {

void check_gen(const Mat2& g, const GroupCtx& ctx, Ambient amb) {
  check_same(g, ctx);
  if (amb == Ambient::SL2 && !in_sl2(g, ctx))
    throw InvalidArgument("generator " + format_signed(g) + " is not in SL2");
  if (amb == Ambient::GL2 && !in_gl2(g, ctx))
    throw InvalidArgument("generator " + format_signed(g) + " is not invertible");
}

std::vector<Code> codes_of(const std::vector<Mat2>& gens) {
  std::vector<Code> out;
  for (const Mat2& g : gens) out.push_back(encode(g));
  return out;
}

std::vector<Mat2> greedy_generators(const ElementSet& elems) {
  const GroupCtx& ctx = elems.ctx();
  std::vector<Mat2> gens;
  std::vector<Code> gcodes;
  std::unordered_set<Code> cur{encode(identity(ctx))};
  for (Code c : elems) {
    if (cur.count(c)) continue;
    gens.push_back(decode(c, ctx));
    gcodes.push_back(c);
    auto cl = close_codes(gcodes, ctx, elems.size());
    cur = std::unordered_set<Code>(cl.begin(), cl.end());
    if (cur.size() == elems.size()) break;
  }
  return gens;
}

std::int64_t sgn(std::uint64_t v) { return static_cast<std::int64_t>(v); }

}  // namespace

Subgroup::Subgroup(GroupCtx ctx, std::vector<Mat2> gens, Ambient ambient)
    : ctx_(std::move(ctx)), ambient_(ambient), st_(std::make_shared<State>()) {
  for (const Mat2& g : gens) check_gen(g, ctx_, ambient_);
  st_->gens = std::move(gens);
}

Subgroup Subgroup::from_elements(ElementSet elems, Ambient ambient, std::vector<Mat2> gens) {
  Subgroup h(elems.ctx(), {}, ambient);
  if (gens.empty())
    h.st_->gens.reset();
  else
    h.st_->gens = std::move(gens);
  h.st_->elems = std::move(elems);
  return h;
}

const std::vector<Mat2>& Subgroup::generators() const {
  std::call_once(st_->gens_once, [this] {
    if (!st_->gens) st_->gens = greedy_generators(elements());
  });
  return *st_->gens;
}

const ElementSet& Subgroup::elements() const {
  std::call_once(st_->elems_once, [this] {
    if (st_->elems) return;
    if (!ctx_.packable())
      throw FeasibilityError("subgroup closure needs modulus <= 65536", max_elements());
    st_->elems = ElementSet(ctx_, close_codes(codes_of(*st_->gens), ctx_, max_elements()));
  });
  return *st_->elems;
}

BigInt Subgroup::index() const {
  if (ambient_ != Ambient::SL2) throw PreconditionError("index is taken in SL2");
  BigInt ord = order();
  if (ctx_.group_order() % ord != 0)
    throw ConsistencyError("subgroup order does not divide the group order");
  return ctx_.group_order() / ord;
}

Subgroup closure(const std::vector<Mat2>& gens, const GroupCtx& ctx, Ambient ambient) {
  Subgroup h(ctx, gens, ambient);
  h.elements();
  return h;
}

std::optional<Subgroup> try_closure(const std::vector<Mat2>& gens, const GroupCtx& ctx,
                                    std::uint64_t cap, Ambient ambient) {
  for (const Mat2& g : gens) check_gen(g, ctx, ambient);
  try {
    auto codes = close_codes(codes_of(gens), ctx, cap);
    return Subgroup::from_elements(ElementSet(ctx, std::move(codes)), ambient, gens);
  } catch (const FeasibilityError&) {
    return std::nullopt;
  }
}

std::string to_string(ExceptionalType t) {
  switch (t) {
    case ExceptionalType::A4: return "A4";
    case ExceptionalType::S4: return "S4";
    case ExceptionalType::A5: return "A5";
  }
  return "?";
}

std::uint64_t smallest_nonresidue(std::uint64_t p) {
  if (p < 3) throw InvalidArgument("non-residues need an odd prime");
  for (std::uint64_t a = 2; a < p; ++a)
    if (pow_mod(a, (p - 1) / 2, p) == p - 1) return a;
  throw ConsistencyError("no quadratic non-residue found");
}

Subgroup standard_subgroup(SubgroupKind kind, std::uint64_t p) {
  GroupCtx ctx(p, 1);
  std::vector<Code> el;
  auto add = [&](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    el.push_back(encode(make_mat(ctx, a, b, c, d)));
  };
  switch (kind.tag) {
    case SubgroupKind::Borel:
      for (std::uint64_t x = 1; x < p; ++x)
        for (std::uint64_t y = 0; y < p; ++y) add(sgn(x), sgn(y), 0, sgn(inv_mod(x, p)));
      break;
    case SubgroupKind::SplitCartanNorm:
      for (std::uint64_t x = 1; x < p; ++x) {
        add(sgn(x), 0, 0, sgn(inv_mod(x, p)));
        add(0, sgn(x), -sgn(inv_mod(x, p)), 0);
      }
      break;
    case SubgroupKind::NonsplitCartanNorm: {
      if (p < 3) throw PreconditionError("the non-split Cartan normalizer needs p >= 3");
      std::uint64_t lam = smallest_nonresidue(p);
      for (std::uint64_t x = 0; x < p; ++x)
        for (std::uint64_t y = 0; y < p; ++y) {
          std::uint64_t q = (x * x % p + p - lam * (y * y % p) % p) % p;  // x^2 - lam y^2
          if (q == 1) add(sgn(x), sgn(y), sgn(lam * y % p), sgn(x));
          if (q == p - 1) add(sgn(x), sgn(y), -sgn(lam * y % p), -sgn(x));
        }
      break;
    }
    case SubgroupKind::Exceptional:
      return exceptional_subgroup(p, kind.ex);
    case SubgroupKind::F:
      if (p != 2) throw PreconditionError("F is a subgroup of SL2(Z/2)");
      return closure({make_mat(ctx, 1, 1, 1, 0)}, ctx);
    case SubgroupKind::A1: {
      if (p != 2) throw PreconditionError("A1 is a subgroup of SL2(Z/4)");
      GroupCtx c4(2, 2);
      return closure({sigma(c4), make_mat(c4, 1, 1, 2, -1)}, c4);
    }
    case SubgroupKind::FullSL2:
      return closure({unipotent(ctx), unipotent_t(ctx)}, ctx);
  }
  return Subgroup::from_elements(ElementSet(ctx, std::move(el)));
}

bool exceptional_available(std::uint64_t p, ExceptionalType t) {
  if (p < 5) return false;
  if (t == ExceptionalType::A5) return p % 5 == 1 || p % 5 == 4;
  return true;
}

namespace {

// PGL2(F_p) elements as matrices scaled so the first nonzero entry is 1
Mat2 pgl_norm(const Mat2& x, const GroupCtx& ctx) {
  std::uint64_t lead = x.a ? x.a : x.b;
  std::uint64_t s = inv_mod(lead, ctx.p());
  std::uint64_t p = ctx.p();
  return {x.a * s % p, x.b * s % p, x.c * s % p, x.d * s % p, p};
}

int pgl_order(const Mat2& x, const GroupCtx& ctx) {
  Mat2 one = identity(ctx);
  Mat2 y = x;
  for (int k = 1; k <= static_cast<int>(2 * ctx.p() + 2); ++k) {
    if (y == one) return k;
    y = pgl_norm(mat_mul(y, x, ctx), ctx);
  }
  throw ConsistencyError("PGL2 element order out of range");
}

std::optional<std::vector<Mat2>> pgl_closure(const std::vector<Mat2>& gens, const GroupCtx& ctx,
                                             std::size_t cap) {
  std::vector<Mat2> out{identity(ctx)};
  std::unordered_set<Code> seen{encode(out[0])};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const Mat2& g : gens) {
      Mat2 y = pgl_norm(mat_mul(out[i], g, ctx), ctx);
      if (seen.insert(encode(y)).second) {
        out.push_back(y);
        if (out.size() > cap) return std::nullopt;
      }
    }
  return out;
}

bool matches(const std::vector<Mat2>& g, const GroupCtx& ctx, ExceptionalType t) {
  std::map<int, int> stats;
  for (const Mat2& x : g) ++stats[pgl_order(x, ctx)];
  switch (t) {
    case ExceptionalType::A4:
      return g.size() == 12 && stats == std::map<int, int>{{1, 1}, {2, 3}, {3, 8}};
    case ExceptionalType::S4:
      return g.size() == 24 && stats == std::map<int, int>{{1, 1}, {2, 9}, {3, 8}, {4, 6}};
    case ExceptionalType::A5:
      return g.size() == 60 && stats == std::map<int, int>{{1, 1}, {2, 15}, {3, 20}, {5, 24}};
  }
  return false;
}

}  // namespace

Subgroup exceptional_subgroup(std::uint64_t p, ExceptionalType t, std::uint64_t seed) {
  if (!exceptional_available(p, t))
    throw PreconditionError(to_string(t) + " of order prime to p is not in PGL2(F_" +
                            std::to_string(p) + ")");
  GroupCtx ctx(p, 1);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> ent(0, p - 1);
  auto random_of_order = [&](int k) {
    for (;;) {
      Mat2 z{ent(rng), ent(rng), ent(rng), ent(rng), p};
      if (!in_gl2(z, ctx)) continue;
      z = pgl_norm(z, ctx);
      int o = pgl_order(z, ctx);
      if (o % k == 0) return pgl_norm(mat_pow(z, static_cast<std::uint64_t>(o / k), ctx), ctx);
    }
  };
  int ka = 3, kb = 3;
  std::size_t target = 12;
  if (t == ExceptionalType::S4) {
    kb = 4;
    target = 24;
  } else if (t == ExceptionalType::A5) {
    kb = 5;
    target = 60;
  }
  for (int attempt = 0; attempt < 200000; ++attempt) {
    Mat2 a = random_of_order(ka), b = random_of_order(kb);
    auto g = pgl_closure({a, b}, ctx, target);
    if (!g || g->size() != target || !matches(*g, ctx, t)) continue;
    std::vector<Code> el;
    for (const Mat2& x : *g) {
      std::uint64_t d = mat_det(x, ctx);
      std::uint64_t want = inv_mod(d, p);
      for (std::uint64_t lam = 1; lam < p; ++lam) {
        if (lam * lam % p != want) continue;
        el.push_back(encode(make_mat(ctx, sgn(lam * x.a % p), sgn(lam * x.b % p),
                                     sgn(lam * x.c % p), sgn(lam * x.d % p))));
      }
    }
    return Subgroup::from_elements(ElementSet(ctx, std::move(el)));
  }
  throw ConsistencyError("exceptional subgroup search failed for " + to_string(t) + " at p=" +
                         std::to_string(p));
}

Mat2 lift_to_sl2(const Mat2& x, const GroupCtx& src, const GroupCtx& dst) {
  check_same(x, src);
  if (src.p() != dst.p() || dst.n() < src.n()) throw InvalidReduction("lift to a lower level");
  if (!in_sl2(x, src)) throw InvalidArgument("lift_to_sl2 needs det 1");
  const std::uint64_t m = dst.modulus(), p = dst.p();
  Mat2 y{x.a, x.b, x.c, x.d, m};
  if (y.a % p != 0) {
    y.d = mul_mod((1 + mul_mod(y.b, y.c, m)) % m, inv_mod(y.a, m), m);
  } else {
    std::uint64_t ad = mul_mod(y.a, y.d, m);
    y.b = mul_mod((ad + m - 1) % m, inv_mod(y.c, m), m);
  }
  return y;
}

namespace {

Code kernel_element(const GroupCtx& dst, int m, std::uint64_t a, std::uint64_t b,
                    std::uint64_t c) {
  const std::uint64_t M = dst.modulus(), q = dst.pk(m);
  std::uint64_t A = (1 + q * a) % M, B = q * b % M, C = q * c % M;
  std::uint64_t D = mul_mod((1 + mul_mod(B, C, M)) % M, inv_mod(A, M), M);
  return encode(Mat2{A, B, C, D, M});
}

}  // namespace

ElementSet congruence_kernel(const GroupCtx& dst, int m) {
  if (m < 0 || m > dst.n()) throw InvalidArgument("kernel level out of range");
  const std::uint64_t r = dst.pk(dst.n() - m);
  if (r * r * r > max_elements())
    throw FeasibilityError("congruence kernel too large", max_elements());
  if (m == 0) return enumerate_group(dst);
  std::vector<Code> out;
  out.reserve(r * r * r);
  for (std::uint64_t a = 0; a < r; ++a)
    for (std::uint64_t b = 0; b < r; ++b)
      for (std::uint64_t c = 0; c < r; ++c) out.push_back(kernel_element(dst, m, a, b, c));
  return ElementSet(dst, std::move(out));
}

Subgroup preimage(const Subgroup& h, const GroupCtx& dst) {
  const GroupCtx& src = h.ctx();
  if (src.p() != dst.p() || dst.n() < src.n()) throw InvalidReduction("preimage level mismatch");
  if (h.ambient() != Ambient::SL2) throw PreconditionError("preimage is taken in SL2");
  const std::uint64_t r = dst.pk(dst.n() - src.n());
  BigInt total = BigInt(h.order()) * r * r * r;
  if (total > max_elements())
    throw FeasibilityError("preimage of order " + total.str() + " exceeds the cap",
                           max_elements());
  ElementSet ker = congruence_kernel(dst, src.n());
  std::vector<Code> out;
  out.reserve(static_cast<std::size_t>(total));
  for (Code c : h.elements()) {
    Code l = encode(lift_to_sl2(decode(c, src), src, dst));
    for (Code k : ker) out.push_back(mul_code(l, k, dst));
  }
  return Subgroup::from_elements(ElementSet(dst, std::move(out)));
}

Subgroup reduce_subgroup(const Subgroup& h, const GroupCtx& dst) {
  return Subgroup::from_elements(reduce_set(h.elements(), dst), h.ambient());
}

Subgroup filtration_level(const Subgroup& h, int s) {
  const GroupCtx& ctx = h.ctx();
  if (s < 1 || s > ctx.n()) throw InvalidArgument("filtration level must be in 1..n");
  GroupCtx low(ctx.p(), s);
  Code one = encode(identity(low));
  std::vector<Code> out;
  for (Code c : h.elements())
    if (reduce_code(c, ctx, low) == one) out.push_back(c);
  return Subgroup::from_elements(ElementSet(ctx, std::move(out)), h.ambient());
}

bool is_slim(const Subgroup& h) {
  const GroupCtx& ctx = h.ctx();
  if (ctx.n() == 1) return BigInt(h.order()) < ctx.group_order();
  std::uint64_t p = ctx.p();
  return filtration_level(h, ctx.n() - 1).order() < p * p * p;
}

Subgroup with_minus_one(const Subgroup& h) {
  if (h.contains_minus_one()) return h;
  const GroupCtx& ctx = h.ctx();
  std::vector<Code> out(h.elements().begin(), h.elements().end());
  Code m1 = encode(minus_one(ctx));
  for (Code c : h.elements()) out.push_back(mul_code(c, m1, ctx));
  std::vector<Mat2> gens = h.generators();
  gens.push_back(minus_one(ctx));
  return Subgroup::from_elements(ElementSet(ctx, std::move(out)), h.ambient(), gens);
}

Subgroup conjugate_subgroup(const Subgroup& h, const Mat2& g) {
  const GroupCtx& ctx = h.ctx();
  Code gc = encode(g), gi = inv_code(gc, ctx);
  std::vector<Code> out;
  out.reserve(h.order());
  for (Code c : h.elements()) out.push_back(mul_code(mul_code(gi, c, ctx), gc, ctx));
  return Subgroup::from_elements(ElementSet(ctx, std::move(out)), h.ambient());
}

Subgroup parse_subgroup_spec(const std::string& spec, std::uint64_t p, int n) {
  if (spec.rfind("preimage:", 0) == 0) {
    std::string rest = spec.substr(9);
    auto at = rest.rfind('@');
    if (at == std::string::npos) throw ParseError("preimage spec needs @<n>: " + spec);
    int lvl = 0;
    try {
      lvl = std::stoi(rest.substr(at + 1));
    } catch (const std::logic_error&) {
      throw ParseError("bad level in " + spec);
    }
    Subgroup inner = parse_subgroup_spec(rest.substr(0, at), p, n);
    return preimage(inner, GroupCtx(p, lvl));
  }
  if (spec.rfind("gens:", 0) == 0) {
    GroupCtx ctx(p, n);
    std::vector<Mat2> gens;
    std::string rest = spec.substr(5);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      std::size_t bar = rest.find('|', pos);
      std::string tok = rest.substr(pos, bar == std::string::npos ? std::string::npos : bar - pos);
      if (!tok.empty()) gens.push_back(parse_mat(tok, ctx));
      if (bar == std::string::npos) break;
      pos = bar + 1;
    }
    return closure(gens, ctx);
  }
  if (spec == "full") return closure({unipotent(GroupCtx(p, n)), unipotent_t(GroupCtx(p, n))},
                                     GroupCtx(p, n));
  if (spec == "B") return standard_subgroup({SubgroupKind::Borel}, p);
  if (spec == "C") return standard_subgroup({SubgroupKind::SplitCartanNorm}, p);
  if (spec == "D") return standard_subgroup({SubgroupKind::NonsplitCartanNorm}, p);
  if (spec == "F") return standard_subgroup({SubgroupKind::F}, p);
  if (spec == "A1") return standard_subgroup({SubgroupKind::A1}, p);
  if (spec.rfind("E:", 0) == 0) {
    std::string t = spec.substr(2);
    ExceptionalType ex;
    if (t == "A4")
      ex = ExceptionalType::A4;
    else if (t == "S4")
      ex = ExceptionalType::S4;
    else if (t == "A5")
      ex = ExceptionalType::A5;
    else
      throw ParseError("unknown exceptional type " + t);
    return standard_subgroup({SubgroupKind::Exceptional, ex}, p);
  }
  throw ParseError("unknown subgroup spec '" + spec + "'");
}

// ---- subgroup lattice ----

namespace {

struct Indexed {
  GroupCtx ctx;
  std::vector<Code> el;
  std::unordered_map<Code, std::uint32_t> idx;
  std::vector<std::uint16_t> table;  // product table when small
  std::size_t n = 0;

  explicit Indexed(const ElementSet& s) : ctx(s.ctx()), el(s.codes()), n(s.size()) {
    idx.reserve(n * 2);
    for (std::size_t i = 0; i < n; ++i) idx.emplace(el[i], static_cast<std::uint32_t>(i));
    if (n <= 4096) {
      table.resize(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          table[i * n + j] = static_cast<std::uint16_t>(idx.at(mul_code(el[i], el[j], ctx)));
    }
  }
  std::uint32_t mul(std::uint32_t i, std::uint32_t j) const {
    if (!table.empty()) return table[i * n + j];
    return idx.at(mul_code(el[i], el[j], ctx));
  }
};

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
  std::size_t operator()(const Bits& b) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto w : b) h = (h ^ w) * 1099511628211ULL + (h >> 29);
    return h;
  }
};

bool test(const Bits& b, std::uint32_t i) { return (b[i >> 6] >> (i & 63)) & 1; }
void set(Bits& b, std::uint32_t i) { b[i >> 6] |= 1ULL << (i & 63); }

}  // namespace

std::vector<Subgroup> enumerate_subgroups(const Subgroup& group, std::size_t max_order,
                                          std::size_t max_count) {
  const ElementSet& all = group.elements();
  if (all.size() > max_order)
    throw FeasibilityError("subgroup lattice of a group of order " + std::to_string(all.size()),
                           max_order);
  Indexed G(all);
  const std::size_t words = (G.n + 63) / 64;
  const std::uint32_t e = G.idx.at(encode(identity(G.ctx)));

  // cyclic subgroups, one generator each
  std::vector<std::uint32_t> cyc_gen;
  {
    std::unordered_set<Bits, BitsHash> seen;
    for (std::uint32_t x = 0; x < G.n; ++x) {
      Bits b(words, 0);
      std::uint32_t y = x;
      set(b, e);
      while (y != e) {
        set(b, y);
        y = G.mul(y, x);
      }
      if (seen.insert(b).second) cyc_gen.push_back(x);
    }
  }

  struct Node {
    Bits bits;
    std::vector<std::uint32_t> members;
    std::vector<std::uint32_t> gens;
  };
  std::vector<Node> nodes;
  std::unordered_set<Bits, BitsHash> known;
  {
    Node t{Bits(words, 0), {e}, {}};
    set(t.bits, e);
    known.insert(t.bits);
    nodes.push_back(std::move(t));
  }
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    for (std::uint32_t x : cyc_gen) {
      if (test(nodes[k].bits, x)) continue;
      // join with <x>: union of cosets g*S closed under left multiplication by generators
      const Node& s = nodes[k];
      std::vector<std::uint32_t> gens = s.gens;
      gens.push_back(x);
      Bits bits = s.bits;
      std::vector<std::uint32_t> members = s.members;
      std::vector<std::uint32_t> reps{e};
      for (std::size_t i = 0; i < reps.size(); ++i) {
        for (std::uint32_t g : gens) {
          std::uint32_t y = G.mul(g, reps[i]);
          if (test(bits, y)) continue;
          reps.push_back(y);
          for (std::uint32_t m : s.members) {
            std::uint32_t z = G.mul(y, m);
            set(bits, z);
            members.push_back(z);
          }
        }
      }
      if (!known.insert(bits).second) continue;
      if (nodes.size() >= max_count)
        throw FeasibilityError("subgroup count limit reached", max_count);
      nodes.push_back(Node{std::move(bits), std::move(members), std::move(gens)});
    }
  }

  std::vector<Subgroup> out;
  out.reserve(nodes.size());
  for (const Node& nd : nodes) {
    std::vector<Code> codes;
    codes.reserve(nd.members.size());
    for (std::uint32_t i : nd.members) codes.push_back(G.el[i]);
    std::vector<Mat2> gens;
    for (std::uint32_t g : nd.gens) gens.push_back(decode(G.el[g], G.ctx));
    if (gens.empty()) gens.push_back(identity(G.ctx));
    out.push_back(Subgroup::from_elements(ElementSet(G.ctx, std::move(codes)), group.ambient(),
                                          std::move(gens)));
  }
  return out;
}

// ---- sampling ----

std::vector<Subgroup> sample_subgroups(const GroupCtx& ctx,
                                       const std::function<Mat2(std::mt19937_64&)>& draw,
                                       const std::function<bool(const Subgroup&)>& accept,
                                       const SampleOptions& opt, std::mt19937_64& rng,
                                       Ambient ambient) {
  std::vector<Subgroup> out;
  std::unordered_set<std::size_t> seen;
  std::uniform_int_distribution<int> ngen(1, opt.max_gens);
  std::uniform_int_distribution<int> depth(0, ctx.n() - 1);
  for (std::size_t att = 0; att < opt.max_attempts && out.size() < opt.count; ++att) {
    int k = ngen(rng);
    std::vector<Mat2> gens;
    for (int i = 0; i < k; ++i) {
      Mat2 x = draw(rng);
      if (rng() & 1) x = mat_pow(x, ctx.pk(depth(rng)), ctx);
      gens.push_back(x);
    }
    auto h = try_closure(gens, ctx, opt.closure_cap, ambient);
    if (!h) continue;
    std::size_t hash = 1469598103934665603ULL;
    for (Code c : h->elements()) hash = (hash ^ c) * 1099511628211ULL;
    if (!seen.insert(hash).second) continue;
    if (!accept(*h)) continue;
    out.push_back(std::move(*h));
  }
  return out;
}

std::function<Mat2(std::mt19937_64&)> uniform_draw(const Subgroup& k) {
  auto codes = std::make_shared<std::vector<Code>>(k.elements().codes());
  GroupCtx ctx = k.ctx();
  return [codes, ctx](std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> d(0, codes->size() - 1);
    return decode((*codes)[d(rng)], ctx);
  };
}

std::function<Mat2(std::mt19937_64&)> preimage_draw(const Subgroup& k, const GroupCtx& dst) {
  auto codes = std::make_shared<std::vector<Code>>(k.elements().codes());
  GroupCtx src = k.ctx();
  return [codes, src, dst](std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> d(0, codes->size() - 1);
    Mat2 l = lift_to_sl2(decode((*codes)[d(rng)], src), src, dst);
    std::uniform_int_distribution<std::uint64_t> r(0, dst.pk(dst.n() - src.n()) - 1);
    Mat2 k = decode(kernel_element(dst, src.n(), r(rng), r(rng), r(rng)), dst);
    return mat_mul(l, k, dst);
  };
}

// ---- finite shadows of the surjectivity lemmas ----

namespace {

bool surjects(const Subgroup& h, const GroupCtx& low) {
  return BigInt(reduce_set(h.elements(), low).size()) == low.group_order();
}

}  // namespace

Section2Result section2_property_check(Section2Lemma which, int trials, std::uint64_t seed) {
  Section2Result res;
  std::mt19937_64 rng(seed);
  if (which == Section2Lemma::L2_1) {
    // lifts of generators of the lower level must generate everything
    struct Case {
      std::uint64_t p;
      int n, m;
    };
    for (Case cs : {Case{2, 3, 2}, Case{3, 3, 2}, Case{5, 2, 1}, Case{7, 2, 1}}) {
      GroupCtx top(cs.p, cs.n), low(cs.p, cs.m);
      Subgroup full_low = closure({unipotent(low), unipotent_t(low)}, low);
      auto draw = preimage_draw(full_low, top);
      for (int t = 0; t < trials; ++t) {
        // random lifts of u and its transpose
        std::vector<Mat2> gens;
        for (const Mat2& g : {unipotent(low), unipotent_t(low)}) {
          Mat2 l = lift_to_sl2(g, low, top);
          Mat2 k = draw(rng);
          Mat2 kk = mat_mul(mat_inv(lift_to_sl2(reduce_mod(k, top, low), low, top), top), k, top);
          gens.push_back(mat_mul(l, kk, top));
        }
        Subgroup h = closure(gens, top);
        ++res.checked;
        if (!surjects(h, low)) {
          res.ok = false;
          res.notes += "lifted generators failed to surject; ";
        } else if (BigInt(h.order()) != top.group_order()) {
          res.ok = false;
          res.notes += "proper subgroup surjecting mod " + std::to_string(low.modulus()) + "; ";
        }
      }
      // random generating pairs as well
      for (int t = 0; t < trials; ++t) {
        Subgroup h = closure({draw(rng), draw(rng)}, top);
        ++res.checked;
        if (surjects(h, low) && BigInt(h.order()) != top.group_order()) {
          res.ok = false;
          res.notes += "proper subgroup surjecting mod " + std::to_string(low.modulus()) + "; ";
        }
      }
    }
    // exhaustive at level 8
    GroupCtx c8(2, 3), c4(2, 2);
    Subgroup g8 = closure({unipotent(c8), unipotent_t(c8)}, c8);
    for (const Subgroup& h : enumerate_subgroups(g8)) {
      ++res.checked;
      if (surjects(h, c4) && h.order() != g8.order()) {
        res.ok = false;
        res.notes += "proper subgroup of SL2(Z/8) surjecting mod 4; ";
      }
    }
    Subgroup a1 = standard_subgroup({SubgroupKind::A1}, 2);
    if (surjects(a1, GroupCtx(2, 1)) && a1.order() == 12)
      res.notes += "A1 in SL2(Z/4) surjects mod 2 and is proper (p=2 needs the mod 4 criterion)";
    return res;
  }

  // det surjectivity on the top congruence layer
  struct Case {
    std::uint64_t p;
    int n;
  };
  for (Case cs : {Case{3, 1}, Case{3, 2}, Case{5, 1}}) {
    GroupCtx ctx(cs.p, cs.n + 1);
    const std::uint64_t M = ctx.modulus(), q = ctx.pk(cs.n);
    const std::uint64_t units = M / cs.p * (cs.p - 1);
    std::uniform_int_distribution<std::uint64_t> ent(0, M - 1);
    int done = 0;
    for (int att = 0; att < trials * 200 && done < trials; ++att) {
      std::vector<Mat2> gens;
      int k = 1 + static_cast<int>(rng() % 2);
      while (static_cast<int>(gens.size()) < k) {
        Mat2 x{ent(rng), ent(rng), ent(rng), ent(rng), M};
        if (in_gl2(x, ctx)) gens.push_back(x);
      }
      auto h = try_closure(gens, ctx, 60000, Ambient::GL2);
      if (!h) continue;
      std::unordered_set<std::uint64_t> dets, top;
      for (Code c : h->elements()) {
        Mat2 x = decode(c, ctx);
        dets.insert(mat_det(x, ctx));
        if (x.a % q == 1 % q && x.d % q == 1 % q && x.b % q == 0 && x.c % q == 0)
          top.insert(mat_det(x, ctx));
      }
      if (dets.size() != units) continue;
      ++done;
      ++res.checked;
      if (top.size() != cs.p) {
        res.ok = false;
        res.notes += "det not onto 1+p^n at modulus " + std::to_string(M) + "; ";
      }
    }
  }
  return res;
}

}  // namespace sl2
