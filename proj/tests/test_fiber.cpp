#include "doctest.h"
#include "sl2/fiber.hpp"

#include <random>

using namespace sl2;

namespace {

ElementSet conj_set(const ElementSet& s, const Mat2& g, const GroupCtx& ctx) {
  std::vector<Code> out;
  for (Code c : s) out.push_back(encode(conjugate(decode(c, ctx), g, ctx)));
  return ElementSet(ctx, std::move(out));
}

}  // namespace

TEST_CASE("structure lemma examples") {
  auto d = FiberDescriptor::standard(ClassKind::sigma, 5, 0, 2, 1);
  ElementSet v = fiber_group(d);
  CHECK(v.size() == 25);
  CHECK(v == explicit_form(ClassKind::sigma, 5, 0, 2, 1));
  GroupCtx ctx(5, 2);
  for (Code c : v) {
    Mat2 x = decode(c, ctx);
    CHECK((x.a + x.d) % 25 == 2);
    CHECK(x.b == x.c);
  }
  auto t = FiberDescriptor::standard(ClassKind::tau, 2, 0, 2, 1);
  CHECK(fiber_group(t).size() == 4);
  CHECK(fiber_group(t) == commutator_form(t));
}

TEST_CASE("hypotheses") {
  CHECK(fiber_hypotheses_hold(ClassKind::sigma, 3, 0, 2, 1));
  CHECK_FALSE(fiber_hypotheses_hold(ClassKind::sigma, 3, 0, 3, 1));
  CHECK_FALSE(fiber_hypotheses_hold(ClassKind::sigma, 2, 0, 2, 1));
  CHECK(fiber_hypotheses_hold(ClassKind::sigma, 2, 0, 3, 2));
  CHECK(fiber_hypotheses_hold(ClassKind::tau, 2, 0, 2, 1));
  CHECK_FALSE(fiber_hypotheses_hold(ClassKind::u_power, 2, 0, 4, 2));
  CHECK(fiber_hypotheses_hold(ClassKind::u_power, 2, 0, 4, 3));
  CHECK_THROWS_AS(fiber_translate(FiberDescriptor::standard(ClassKind::sigma, 3, 0, 3, 1)), PreconditionError);
}

TEST_CASE("sigma fibers mod 4 over mod 2 have two elements") {
  CHECK(class_fiber_sizes(ClassKind::sigma, 2, 0, 2, 1) == std::set<std::size_t>{2});
}

TEST_CASE("orthogonality examples") {
  CHECK(verify_orthogonality(FiberDescriptor::standard(ClassKind::sigma, 3, 0, 2, 1)));
  CHECK(verify_orthogonality(FiberDescriptor::standard(ClassKind::u_power, 5, 0, 2, 1)));
  CHECK(verify_orthogonality(FiberDescriptor::standard(ClassKind::tau, 5, 0, 2, 1)));
}

TEST_CASE("conjugation equivariance") {
  std::mt19937_64 rng(9);
  for (std::uint64_t p : {3, 5})
    for (ClassKind k : {ClassKind::sigma, ClassKind::tau, ClassKind::u_power}) {
      auto d = FiberDescriptor::standard(k, p, 0, 2, 1);
      GroupCtx top = d.top();
      ElementSet v = fiber_translate(d);
      ElementSet group = enumerate_group(top);
      std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
      for (int i = 0; i < 10; ++i) {
        Mat2 g = decode(group.codes()[pick(rng)], top);
        FiberDescriptor e = d;
        e.alpha = conjugate(d.class_rep(top), g, top);
        CHECK(fiber_translate(e) == conj_set(v, g, top));
      }
    }
}

TEST_CASE("lifts of the same element give the same V") {
  const std::uint64_t p = 3;
  for (ClassKind k : {ClassKind::sigma, ClassKind::tau, ClassKind::u_power}) {
    auto d = FiberDescriptor::standard(k, p, 0, 2, 1);
    GroupCtx top = d.top(), low = d.low();
    auto cls = class_set(d.class_rep(top), top);
    Code key = reduce_code(encode(d.class_rep(top)), top, low);
    ElementSet v = fiber_translate(d);
    std::size_t lifts = 0;
    for (Code c : *cls) {
      if (reduce_code(c, top, low) != key) continue;
      FiberDescriptor e = d;
      e.alpha = decode(c, top);
      CHECK(fiber_translate(e) == v);
      ++lifts;
    }
    CHECK(lifts > 1);
  }
}

TEST_CASE("V depends only on alpha mod p^(r+n-m)") {
  auto d = FiberDescriptor::standard(ClassKind::sigma, 5, 0, 3, 2);
  GroupCtx top = d.top();
  ElementSet v = fiber_translate(d);
  // alpha perturbed by p^(n-m) inside the class
  Mat2 a = d.class_rep(top);
  Mat2 g = make_mat(top, 1, 5, 0, 1);
  FiberDescriptor e = d;
  e.alpha = conjugate(a, g, top);
  CHECK(reduce_mod(e.alpha, top, d.low()) == reduce_mod(a, top, d.low()));
  CHECK(fiber_translate(e) == v);
}

TEST_CASE("recovery counts") {
  CHECK(recovery_count(ClassKind::sigma, 5, 0, 2, 1) == 2);
  CHECK(recovery_count(ClassKind::tau, 3, 0, 3, 2) == 1);
  CHECK(recovery_count(ClassKind::u_power, 2, 0, 5, 3) == 2);
  CHECK(recovery_count_formula(ClassKind::u_power, 2, 0, 5, 3) == 2);
  CHECK(recovery_count(ClassKind::u_power, 5, 0, 3, 2) == 2);
  CHECK(recovery_count(ClassKind::u_power, 3, 0, 4, 2) == recovery_count_formula(ClassKind::u_power, 3, 0, 4, 2));
}

TEST_CASE("recovery sets match the listed elements") {
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{{3, 2}, {5, 2}, {2, 3}, {2, 4}})
    for (ClassKind k : {ClassKind::sigma, ClassKind::tau, ClassKind::u_power}) {
      CAPTURE(p);
      CAPTURE(n);
      CHECK(recovery_set(k, p, 0, n) == recovery_set_listed(k, p, 0, n));
    }
}
