#include "doctest.h"
#include "sl2/bounds.hpp"
#include "sl2/genus.hpp"
#include "sl2/sampling.hpp"
#include "sl2/section7.hpp"

using namespace sl2;

namespace {

const std::vector<BoundKind> kAll = {BoundKind::a_sigma_p, BoundKind::a_tau_p, BoundKind::a_tau_3,
                                     BoundKind::a_u_p,     BoundKind::a_u_2,   BoundKind::a_sigma_2,
                                     BoundKind::a_tau_2,   BoundKind::b_u_2};

}  // namespace

TEST_CASE("bound sequences are non-negative on their domains") {
  for (BoundKind k : kAll)
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13})
      for (int n = 2; n <= 12; ++n) {
        if (!bound_domain_ok(k, p, n)) {
          CHECK_THROWS_AS(bound_sequence(k, p, n), PreconditionError);
          continue;
        }
        CAPTURE(to_string(k));
        CAPTURE(p);
        CAPTURE(n);
        CHECK(bound_sequence(k, p, n) >= 0);
      }
}

TEST_CASE("bound kind names round-trip") {
  for (BoundKind k : kAll) CHECK(parse_bound_kind(to_string(k)) == k);
  CHECK_THROWS(parse_bound_kind("a_rho_p"));
}

TEST_CASE("the bound at n = 2 is twice the fiber") {
  for (std::uint64_t p : {3, 5, 7}) CHECK(bound_sequence(BoundKind::a_sigma_p, p, 2) == BigInt(2 * p * p));
}

TEST_CASE("slim bounds hold with brute-force counts") {
  std::mt19937_64 rng(4);
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{{3, 2}, {3, 3}, {5, 2}, {2, 4}, {2, 5}}) {
    GroupCtx ctx(p, n);
    for (const Subgroup& h : sample_slim(ctx, 25, rng))
      for (const ConjClassRef& a : bounded_classes(ctx))
        for (const SlimBoundAudit& au : audit_slim_bounds(h, a)) {
          CAPTURE(to_string(au.kind));
          CHECK(au.count == count_in_subgroup(h, a));
          CHECK(au.count <= au.rhs);
          CHECK(au.holds);
        }
  }
}

TEST_CASE("non-slim subgroups are rejected") {
  GroupCtx ctx(3, 2);
  Subgroup full = Subgroup::from_elements(enumerate_group(ctx));
  CHECK_THROWS_AS(audit_slim_bounds(full, ConjClassRef::of_sigma(ctx)), PreconditionError);
}

TEST_CASE("filtration bound on every slim subgroup of SL2(Z/9)") {
  GroupCtx ctx(3, 2);
  std::size_t slim = 0;
  for (const Subgroup& h : enumerate_subgroups(Subgroup::from_elements(enumerate_group(ctx)))) {
    if (!is_slim(h)) continue;
    ++slim;
    CHECK(filtration_bound(h).ok);
  }
  CHECK(slim > 0);
}

TEST_CASE("finite shadows") {
  std::mt19937_64 rng(8);
  GroupCtx ctx(3, 3);
  std::size_t checked = 0;
  for (const Subgroup& h : sample_slim(ctx, 20, rng))
    for (const ConjClassRef& a : bounded_classes(ctx)) {
      ShadowAudit x = fiber_image_shadow(h, a), y = fiber_count_shadow(h, a);
      CHECK(x.ok);
      CHECK(y.ok);
      checked += x.checked + y.checked;
    }
  CHECK(checked > 0);
}

TEST_CASE("exponent tables") {
  CHECK(n_p_bound(2) == 11);
  CHECK(n_p_bound(3) == 5);
  CHECK(n_p_bound(5) == 3);
  CHECK(n_p_bound(7) == 2);
  CHECK(n_p_bound(13) == 1);
  CHECK(n_p_bound(29) == 0);
  CHECK(n_prime(2) == 10);
  CHECK(n_prime(5) == 3);
}

TEST_CASE("the p >= 17 lower bound changes sign at 17") {
  for (std::uint64_t p = 5; p <= 50; ++p) {
    if (!is_prime(p)) continue;
    CAPTURE(p);
    CHECK((lemma71_value(p) > 0) == (p >= 17));
  }
}
