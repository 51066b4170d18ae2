#include "doctest.h"
#include "sl2/group.hpp"

#include <set>

using namespace sl2;

namespace {

// every element of SL2(Z/p^n) by scanning all matrices
std::size_t count_sl2_naive(const GroupCtx& ctx) {
  const std::uint64_t m = ctx.modulus();
  std::size_t c = 0;
  for (std::uint64_t a = 0; a < m; ++a)
    for (std::uint64_t b = 0; b < m; ++b)
      for (std::uint64_t cc = 0; cc < m; ++cc)
        for (std::uint64_t d = 0; d < m; ++d)
          if ((a * d + m * m - b * cc) % m == 1) ++c;
  return c;
}

// |{g x g^-1}| by scanning SL2
std::size_t class_size_naive(const Mat2& x, const GroupCtx& ctx) {
  std::set<Code> seen;
  for (Code g : enumerate_group(ctx)) seen.insert(encode(conjugate(x, decode(g, ctx), ctx)));
  return seen.size();
}

}  // namespace

TEST_CASE("enumeration matches the naive scan") {
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}, {7, 1}}) {
    GroupCtx ctx(p, n);
    CHECK(enumerate_group(ctx).size() == count_sl2_naive(ctx));
    CHECK(BigInt(enumerate_group(ctx).size()) == group_order(p, n));
  }
}

TEST_CASE("class sizes: formula, brute force and naive scan agree") {
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}, {5, 2}}) {
    GroupCtx ctx(p, n);
    std::vector<ConjClassRef> refs = {ConjClassRef::of_sigma(ctx), ConjClassRef::of_tau(ctx)};
    for (int r = 0; r < n; ++r) refs.push_back(ConjClassRef::of_u_power(ctx, r));
    for (const auto& ref : refs) {
      CAPTURE(ref.name());
      CAPTURE(p);
      CAPTURE(n);
      const std::size_t naive = class_size_naive(ref.rep(), ctx);
      CHECK(BigInt(naive) == conj_class_size_formula(ref));
      CHECK(conj_class_brute(ref.rep(), ctx).size() == naive);
      CHECK(class_set(ref)->size() == naive);
      CHECK(centralizer_order_brute(ref.rep(), ctx) * naive == ctx.group_order());
      if (ref.kind != ClassKind::u_power || ref.r == 0)
        CHECK(centralizer_order_brute(ref.rep(), ctx) == centralizer_order_formula(ref));
    }
  }
}

TEST_CASE("classes partition the group") {
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{{2, 2}, {3, 2}, {5, 1}}) {
    GroupCtx ctx(p, n);
    std::size_t total = 0;
    std::set<Code> seen;
    for (const ElementSet& c : all_classes(ctx)) {
      total += c.size();
      for (Code x : c) CHECK(seen.insert(x).second);
    }
    CHECK(total == enumerate_group(ctx).size());
  }
  CHECK(all_classes(GroupCtx(2, 2)).size() == 10);
}

TEST_CASE("element sets") {
  GroupCtx ctx(3, 1);
  ElementSet a(ctx, {encode(identity(ctx)), encode(sigma(ctx)), encode(identity(ctx))});
  ElementSet b(ctx, {encode(sigma(ctx)), encode(tau(ctx))});
  CHECK(a.size() == 2);
  CHECK(intersection_size(a, b) == 1);
  CHECK(a.contains(sigma(ctx)));
  CHECK_FALSE(a.contains(tau(ctx)));
  GroupCtx hi(3, 2);
  CHECK(reduce_set(enumerate_group(hi), ctx).size() == enumerate_group(ctx).size());
}

TEST_CASE("u^p^r class at p = 2 and small levels") {
  GroupCtx ctx(2, 2);
  CHECK(conj_class_size_formula(ConjClassRef::of_u_power(ctx, 0)) == 6);
  CHECK(conj_class_size_formula(ConjClassRef::of_u_power(ctx, 1)) == 3);
  CHECK_THROWS(ConjClassRef::of_u_power(ctx, 2));
}
