#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sl2/errors.hpp"

namespace sl2 {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

bool is_prime(std::uint64_t n);

// Global materialization cap. Default 5e7, overridden by SL2_MAX_ELEMENTS.
std::uint64_t max_elements();
void set_max_elements(std::uint64_t cap);

class GroupCtx {
 public:
  GroupCtx(std::uint64_t p, int n);

  std::uint64_t p() const { return p_; }
  int n() const { return n_; }
  std::uint64_t modulus() const { return mod_; }
  const BigInt& group_order() const { return order_; }
  // |GL2(Z/p^n)|
  BigInt gl_order() const;
  // p^k for 0 <= k <= n
  std::uint64_t pk(int k) const;
  // entries fit in 16 bits, so a matrix packs into one word
  bool packable() const { return mod_ <= 65536; }

  bool operator==(const GroupCtx& o) const { return p_ == o.p_ && n_ == o.n_; }
  bool operator!=(const GroupCtx& o) const { return !(*this == o); }

 private:
  std::uint64_t p_;
  int n_;
  std::uint64_t mod_;
  BigInt order_;
};

GroupCtx level(const GroupCtx& ctx, int n);

struct Mat2 {
  std::uint64_t a = 0, b = 0, c = 0, d = 0;
  std::uint64_t mod = 0;
  bool operator==(const Mat2& o) const = default;
};

Mat2 make_mat(const GroupCtx& ctx, std::int64_t a, std::int64_t b, std::int64_t c,
              std::int64_t d);
Mat2 identity(const GroupCtx& ctx);
Mat2 minus_one(const GroupCtx& ctx);
Mat2 sigma(const GroupCtx& ctx);
Mat2 tau(const GroupCtx& ctx);
Mat2 unipotent(const GroupCtx& ctx);             // u = (1 1; 0 1)
Mat2 unipotent_t(const GroupCtx& ctx);           // transpose of u
Mat2 unipotent_power(const GroupCtx& ctx, std::uint64_t k);  // u^k

Mat2 mat_mul(const Mat2& x, const Mat2& y, const GroupCtx& ctx);
Mat2 mat_inv(const Mat2& x, const GroupCtx& ctx);
Mat2 mat_neg(const Mat2& x, const GroupCtx& ctx);
Mat2 mat_pow(const Mat2& x, const BigInt& e, const GroupCtx& ctx);
Mat2 mat_pow(const Mat2& x, std::uint64_t e, const GroupCtx& ctx);
std::uint64_t mat_det(const Mat2& x, const GroupCtx& ctx);
std::uint64_t mat_trace(const Mat2& x, const GroupCtx& ctx);
bool in_sl2(const Mat2& x, const GroupCtx& ctx);
bool in_gl2(const Mat2& x, const GroupCtx& ctx);
Mat2 reduce_mod(const Mat2& x, const GroupCtx& src, const GroupCtx& dst);
BigInt element_order(const Mat2& x, const GroupCtx& ctx);
// g^-1 x g
Mat2 conjugate(const Mat2& x, const Mat2& g, const GroupCtx& ctx);

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);

// Packed codes; require ctx.packable().
using Code = std::uint64_t;
Code encode(const Mat2& x);
Mat2 decode(Code c, const GroupCtx& ctx);
Code mul_code(Code x, Code y, const GroupCtx& ctx);
Code inv_code(Code x, const GroupCtx& ctx);
Code reduce_code(Code x, const GroupCtx& src, const GroupCtx& dst);

// "a,b;c,d" with signed integers allowed
Mat2 parse_mat(const std::string& s, const GroupCtx& ctx);
// residues, "a,b;c,d"
std::string format_mat(const Mat2& x);
// symmetric representatives in (-m/2, m/2]
std::string format_signed(const Mat2& x);

void check_same(const Mat2& x, const GroupCtx& ctx);

}  // namespace sl2
