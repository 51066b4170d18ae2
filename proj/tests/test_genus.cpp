#include "doctest.h"
#include "sl2/genus.hpp"
#include "sl2/sampling.hpp"

using namespace sl2;

TEST_CASE("modular curve genera of the Borel subgroup") {
  const std::map<std::uint64_t, int> x0 = {{5, 0}, {7, 0}, {11, 1}, {13, 0}, {17, 1}, {19, 1}, {23, 2}};
  for (auto [p, g] : x0) {
    CAPTURE(p);
    Subgroup b = standard_subgroup({SubgroupKind::Borel}, p);
    CHECK(genus(b) == g);
    CHECK(genus_by_definition(b) == g);
    CHECK(closed_form_genus(CartanKind::B, p) == g);
  }
}

TEST_CASE("closed forms agree with the formula for B, C, D") {
  for (std::uint64_t p : {5, 7, 11, 13, 17, 19, 23, 29}) {
    CAPTURE(p);
    CHECK(closed_form_genus(CartanKind::C, p) ==
          genus(with_minus_one(standard_subgroup({SubgroupKind::SplitCartanNorm}, p))));
    CHECK(closed_form_genus(CartanKind::D, p) ==
          genus(with_minus_one(standard_subgroup({SubgroupKind::NonsplitCartanNorm}, p))));
  }
  CHECK_THROWS_AS(closed_form_genus(CartanKind::B, 3), PreconditionError);
}

TEST_CASE("fixed points: coset action against the class identity") {
  std::mt19937_64 rng(2);
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{{2, 3}, {3, 2}}) {
    GroupCtx ctx(p, n);
    for (const Subgroup& h : sample_slim(ctx, 15, rng)) {
      for (const Mat2& a : {sigma(ctx), tau(ctx), unipotent(ctx)})
        CHECK(fix_points_direct(h, a) == fix_points_identity(h, a));
      CHECK(Rational(cusp_count_direct(h), h.index()) == cusp_ratio_formula(h));
      CHECK(cusp_orbit_ratio(h) == cusp_ratio_formula(h));
    }
  }
}

TEST_CASE("genus needs -1") {
  GroupCtx ctx(5, 1);
  Subgroup u = closure({unipotent(ctx)}, ctx);
  CHECK_THROWS_AS(genus(u), PreconditionError);
  CHECK(genus_with_minus_one(u) == genus(with_minus_one(u)));
  CHECK_FALSE(genus_report(u).genus.has_value());
}

TEST_CASE("delta and the genus agree in sign convention") {
  // g = 1 + index * delta / 12 for H containing -1
  for (std::uint64_t p : {11, 13, 17}) {
    Subgroup b = standard_subgroup({SubgroupKind::Borel}, p);
    GenusReport r = genus_report(b);
    CHECK(Rational(*r.genus) == 1 + Rational(r.index) * r.delta / 12);
  }
}

TEST_CASE("legendre symbol") {
  CHECK(legendre(2, 7) == 1);
  CHECK(legendre(3, 7) == -1);
  CHECK(legendre(14, 7) == 0);
  CHECK_THROWS(legendre(1, 2));
}
