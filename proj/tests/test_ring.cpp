#include "doctest.h"
#include "sl2/ring.hpp"

#include <random>

using namespace sl2;

namespace {

bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Mat2 naive_mul(const Mat2& x, const Mat2& y, std::uint64_t m) {
  return {(x.a * y.a + x.b * y.c) % m, (x.a * y.b + x.b * y.d) % m, (x.c * y.a + x.d * y.c) % m,
          (x.c * y.b + x.d * y.d) % m, m};
}

Mat2 random_mat(std::mt19937_64& rng, const GroupCtx& ctx) {
  std::uniform_int_distribution<std::uint64_t> d(0, ctx.modulus() - 1);
  return make_mat(ctx, d(rng), d(rng), d(rng), d(rng));
}

}  // namespace

TEST_CASE("primality agrees with trial division") {
  for (std::uint64_t n = 0; n < 2000; ++n) CHECK(is_prime(n) == trial_division_prime(n));
}

TEST_CASE("context basics") {
  GroupCtx c(3, 4);
  CHECK(c.modulus() == 81);
  CHECK(c.pk(0) == 1);
  CHECK(c.pk(4) == 81);
  CHECK(c.group_order() == 472392);
  CHECK_THROWS_AS(GroupCtx(4, 1), InvalidArgument);
  CHECK_THROWS_AS(GroupCtx(5, 0), InvalidArgument);
}

TEST_CASE("multiplication, inverse and determinant against naive arithmetic") {
  std::mt19937_64 rng(7);
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{{2, 5}, {3, 3}, {5, 2}, {13, 1}}) {
    GroupCtx ctx(p, n);
    const std::uint64_t m = ctx.modulus();
    for (int i = 0; i < 300; ++i) {
      Mat2 x = random_mat(rng, ctx), y = random_mat(rng, ctx);
      CHECK(mat_mul(x, y, ctx) == naive_mul(x, y, m));
      CHECK(mat_det(x, ctx) == (x.a * x.d % m + m - x.b * x.c % m) % m);
      CHECK(mat_det(mat_mul(x, y, ctx), ctx) == mat_det(x, ctx) * mat_det(y, ctx) % m);
      if (in_gl2(x, ctx)) {
        CHECK(mat_mul(x, mat_inv(x, ctx), ctx) == identity(ctx));
        CHECK(decode(encode(x), ctx) == x);
        CHECK(decode(mul_code(encode(x), encode(y), ctx), ctx) == mat_mul(x, y, ctx));
      } else {
        CHECK_THROWS_AS(mat_inv(x, ctx), NotInvertible);
      }
    }
  }
}

TEST_CASE("special elements") {
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{{2, 3}, {3, 2}, {7, 2}}) {
    GroupCtx ctx(p, n);
    CHECK(element_order(sigma(ctx), ctx) == 4);
    CHECK(element_order(tau(ctx), ctx) == 6);
    CHECK(element_order(unipotent(ctx), ctx) == ctx.modulus());
    CHECK(in_sl2(sigma(ctx), ctx));
    CHECK(in_sl2(tau(ctx), ctx));
    CHECK(unipotent_power(ctx, ctx.modulus()) == identity(ctx));
  }
}

TEST_CASE("reduction is a homomorphism") {
  std::mt19937_64 rng(3);
  GroupCtx hi(3, 4), lo(3, 2);
  for (int i = 0; i < 200; ++i) {
    Mat2 x = random_mat(rng, hi), y = random_mat(rng, hi);
    CHECK(reduce_mod(mat_mul(x, y, hi), hi, lo) == mat_mul(reduce_mod(x, hi, lo), reduce_mod(y, hi, lo), lo));
    CHECK(reduce_code(encode(x), hi, lo) == encode(reduce_mod(x, hi, lo)));
  }
  CHECK_THROWS(reduce_mod(identity(lo), lo, hi));
}

TEST_CASE("parse and format") {
  GroupCtx ctx(2, 2);
  Mat2 x = parse_mat("-1,2;-1,1", ctx);
  CHECK(x == make_mat(ctx, 3, 2, 3, 1));
  CHECK(format_mat(x) == "3,2;3,1");
  CHECK(format_signed(x) == "-1,2;-1,1");
  CHECK(parse_mat(format_signed(x), ctx) == x);
  CHECK_THROWS_AS(parse_mat("1,2,3", ctx), ParseError);
  CHECK_THROWS_AS(check_same(identity(GroupCtx(3, 1)), ctx), ContextMismatch);
}

TEST_CASE("modular helpers") {
  CHECK(inv_mod(3, 7) == 5);
  CHECK(pow_mod(2, 10, 1000) == 24);
  CHECK(mul_mod(1ull << 40, 1ull << 40, 1000000007ull) == (((1ull << 40) % 1000000007ull) * ((1ull << 40) % 1000000007ull)) % 1000000007ull);
}
