#include "doctest.h"
#include "sl2/sampling.hpp"
#include "sl2/subgroup.hpp"

#include <set>

using namespace sl2;

namespace {

bool closed_under_mul(const Subgroup& h) {
  const GroupCtx& ctx = h.ctx();
  for (Code x : h.elements())
    for (Code y : h.elements())
      if (!h.elements().contains(decode(mul_code(x, y, ctx), ctx))) return false;
  return true;
}

}  // namespace

TEST_CASE("standard subgroup orders") {
  for (std::uint64_t p : {3, 5, 7, 11, 13}) {
    CAPTURE(p);
    CHECK(standard_subgroup({SubgroupKind::Borel}, p).order() == (p - 1) * p);
    CHECK(standard_subgroup({SubgroupKind::SplitCartanNorm}, p).order() == 2 * (p - 1));
    CHECK(standard_subgroup({SubgroupKind::NonsplitCartanNorm}, p).order() == 2 * (p + 1));
  }
  CHECK(standard_subgroup({SubgroupKind::F}, 2).order() == 3);
  CHECK(standard_subgroup({SubgroupKind::A1}, 2).order() == 12);
  CHECK(standard_subgroup({SubgroupKind::FullSL2}, 7).order() == 336);
}

TEST_CASE("exceptional subgroups") {
  const std::map<ExceptionalType, std::size_t> orders = {
      {ExceptionalType::A4, 24}, {ExceptionalType::S4, 48}, {ExceptionalType::A5, 120}};
  for (std::uint64_t p : {5, 7, 11, 13, 17, 19})
    for (auto [t, ord] : orders) {
      if (!exceptional_available(p, t)) continue;
      CAPTURE(p);
      Subgroup e = exceptional_subgroup(p, t);
      // an S4 outside PSL2 meets SL2 only in its A4
      const bool s4_in_psl = p % 8 == 1 || p % 8 == 7;
      CHECK(e.order() == (t == ExceptionalType::S4 && !s4_in_psl ? 24 : ord));
      CHECK(e.contains_minus_one());
      CHECK(closed_under_mul(e));
    }
  CHECK(exceptional_available(7, ExceptionalType::S4));
  CHECK_FALSE(exceptional_available(7, ExceptionalType::A5));
  CHECK(exceptional_available(11, ExceptionalType::A5));
}

TEST_CASE("closure is a group and respects Lagrange") {
  GroupCtx ctx(3, 2);
  Subgroup h = closure({unipotent(ctx), mat_pow(tau(ctx), std::uint64_t(2), ctx)}, ctx);
  CHECK(closed_under_mul(h));
  CHECK(ctx.group_order() % h.order() == 0);
  CHECK_FALSE(try_closure({unipotent(ctx), unipotent_t(ctx)}, ctx, 10).has_value());
}

TEST_CASE("preimage, reduction and filtration") {
  Subgroup b = standard_subgroup({SubgroupKind::Borel}, 5);
  GroupCtx top(5, 2);
  Subgroup pre = preimage(b, top);
  CHECK(pre.order() == b.order() * 125);
  CHECK(reduce_subgroup(pre, GroupCtx(5, 1)).elements() == b.elements());
  CHECK(filtration_level(pre, 1).order() == 125);
  CHECK(congruence_kernel(top, 1).size() == 125);
  CHECK_FALSE(is_slim(pre));
  CHECK(is_slim(b));
}

TEST_CASE("subgroups of SL2(F_2) and SL2(Z/4)") {
  auto s3 = enumerate_subgroups(standard_subgroup({SubgroupKind::FullSL2}, 2));
  CHECK(s3.size() == 6);
  GroupCtx ctx(2, 2);
  auto subs = enumerate_subgroups(Subgroup::from_elements(enumerate_group(ctx)));
  std::set<std::vector<Code>> distinct;
  for (const Subgroup& h : subs) {
    CHECK(48 % h.order() == 0);
    distinct.insert({h.elements().begin(), h.elements().end()});
  }
  CHECK(distinct.size() == subs.size());
}

TEST_CASE("A1 surjects mod 2 but is proper") {
  Subgroup a1 = standard_subgroup({SubgroupKind::A1}, 2);
  CHECK(reduce_set(a1.elements(), GroupCtx(2, 1)).size() == 6);
  CHECK(a1.index() == 4);
  CHECK(is_slim(a1));
}

TEST_CASE("subgroup spec strings") {
  CHECK(parse_subgroup_spec("B", 13, 1).order() == 156);
  CHECK(parse_subgroup_spec("E:A4", 7, 1).order() == 24);
  CHECK(parse_subgroup_spec("full", 3, 2).order() == 648);
  CHECK(parse_subgroup_spec("gens:1,1;0,1", 5, 2).order() == 25);
  CHECK(parse_subgroup_spec("gens:0,1;-1,0|1,1;0,1", 2, 1).order() == 6);
  CHECK(parse_subgroup_spec("preimage:C@2", 3, 1).order() == 4 * 27);
  CHECK(parse_subgroup_spec("A1", 2, 2).order() == 12);
  CHECK_THROWS_AS(parse_subgroup_spec("Q", 5, 1), ParseError);
  CHECK_THROWS(parse_subgroup_spec("gens:1,1;1,1", 5, 1));
  CHECK_THROWS(parse_subgroup_spec("D", 2, 1));
}

TEST_CASE("sampling is seeded and returns slim subgroups") {
  GroupCtx ctx(3, 3);
  std::mt19937_64 r1(11), r2(11);
  auto a = sample_slim(ctx, 20, r1);
  auto b = sample_slim(ctx, 20, r2);
  REQUIRE(a.size() == b.size());
  CHECK(a.size() == 20);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].elements() == b[i].elements());
    CHECK(is_slim(a[i]));
  }
  std::mt19937_64 r3(5);
  auto full = full_image_slim(2, 5, 5, r3);
  CHECK_FALSE(full.empty());
  for (const Subgroup& h : full) {
    CHECK(is_slim(h));
    CHECK(reduce_set(h.elements(), GroupCtx(2, 1)).size() == 6);
  }
}

TEST_CASE("surjectivity and determinant shadows") {
  CHECK(section2_property_check(Section2Lemma::L2_1, 10, 3).ok);
  CHECK(section2_property_check(Section2Lemma::L2_5, 10, 3).ok);
}
