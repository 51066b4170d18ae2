#include "sl2/ring.hpp"

#include <atomic>
#include <cstdlib>
#include <sstream>

namespace sl2 {

namespace {

using u128 = unsigned __int128;

std::uint64_t cap_from_env() {
  const char* s = std::getenv("SL2_MAX_ELEMENTS");
  if (s && *s) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 50'000'000ULL;
}

std::atomic<std::uint64_t>& cap_ref() {
  static std::atomic<std::uint64_t> cap{cap_from_env()};
  return cap;
}

std::uint64_t norm(std::int64_t v, std::uint64_t m) {
  std::int64_t r = v % static_cast<std::int64_t>(m);
  if (r < 0) r += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(r);
}

std::vector<BigInt> prime_factors(BigInt n) {
  std::vector<BigInt> out;
  for (BigInt q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw NotInvertible("element " + std::to_string(a) + " is not a unit mod " +
                                  std::to_string(m));
  return norm(t, m);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL,
                          37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL,
                          37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

std::uint64_t max_elements() { return cap_ref().load(); }
void set_max_elements(std::uint64_t cap) { cap_ref().store(cap); }

GroupCtx::GroupCtx(std::uint64_t p, int n) : p_(p), n_(n) {
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  if (n < 1) throw InvalidArgument("level exponent must be >= 1");
  u128 m = 1;
  for (int i = 0; i < n; ++i) {
    m *= p;
    if (m >= (u128(1) << 62)) throw InvalidArgument("modulus p^n too large");
  }
  mod_ = static_cast<std::uint64_t>(m);
  BigInt P = p;
  order_ = (P + 1) * (P - 1) * boost::multiprecision::pow(P, 3 * n - 2);
}

BigInt GroupCtx::gl_order() const {
  BigInt P = p_;
  return order_ * (P - 1) * boost::multiprecision::pow(P, n_ - 1);
}

std::uint64_t GroupCtx::pk(int k) const {
  if (k < 0 || k > n_) throw InvalidArgument("p^k requested outside 0..n");
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r *= p_;
  return r;
}

GroupCtx level(const GroupCtx& ctx, int n) { return GroupCtx(ctx.p(), n); }

void check_same(const Mat2& x, const GroupCtx& ctx) {
  if (x.mod != ctx.modulus())
    throw ContextMismatch("matrix modulus " + std::to_string(x.mod) + " does not match context " +
                          std::to_string(ctx.modulus()));
}

Mat2 make_mat(const GroupCtx& ctx, std::int64_t a, std::int64_t b, std::int64_t c,
              std::int64_t d) {
  std::uint64_t m = ctx.modulus();
  return {norm(a, m), norm(b, m), norm(c, m), norm(d, m), m};
}

Mat2 identity(const GroupCtx& ctx) { return make_mat(ctx, 1, 0, 0, 1); }
Mat2 minus_one(const GroupCtx& ctx) { return make_mat(ctx, -1, 0, 0, -1); }
Mat2 sigma(const GroupCtx& ctx) { return make_mat(ctx, 0, 1, -1, 0); }
Mat2 tau(const GroupCtx& ctx) { return make_mat(ctx, 1, 1, -1, 0); }
Mat2 unipotent(const GroupCtx& ctx) { return make_mat(ctx, 1, 1, 0, 1); }
Mat2 unipotent_t(const GroupCtx& ctx) { return make_mat(ctx, 1, 0, 1, 1); }
Mat2 unipotent_power(const GroupCtx& ctx, std::uint64_t k) {
  return {1 % ctx.modulus(), k % ctx.modulus(), 0, 1 % ctx.modulus(), ctx.modulus()};
}

Mat2 mat_mul(const Mat2& x, const Mat2& y, const GroupCtx& ctx) {
  check_same(x, ctx);
  check_same(y, ctx);
  const std::uint64_t m = ctx.modulus();
  auto mm = [m](std::uint64_t p, std::uint64_t q, std::uint64_t r, std::uint64_t s) {
    return static_cast<std::uint64_t>((static_cast<u128>(p) * q + static_cast<u128>(r) * s) % m);
  };
  return {mm(x.a, y.a, x.b, y.c), mm(x.a, y.b, x.b, y.d), mm(x.c, y.a, x.d, y.c),
          mm(x.c, y.b, x.d, y.d), m};
}

std::uint64_t mat_det(const Mat2& x, const GroupCtx& ctx) {
  check_same(x, ctx);
  const std::uint64_t m = ctx.modulus();
  std::uint64_t ad = mul_mod(x.a, x.d, m), bc = mul_mod(x.b, x.c, m);
  return (ad + m - bc) % m;
}

std::uint64_t mat_trace(const Mat2& x, const GroupCtx& ctx) {
  check_same(x, ctx);
  return (x.a + x.d) % ctx.modulus();
}

bool in_sl2(const Mat2& x, const GroupCtx& ctx) { return mat_det(x, ctx) == 1 % ctx.modulus(); }

bool in_gl2(const Mat2& x, const GroupCtx& ctx) { return mat_det(x, ctx) % ctx.p() != 0; }

Mat2 mat_neg(const Mat2& x, const GroupCtx& ctx) {
  check_same(x, ctx);
  const std::uint64_t m = ctx.modulus();
  auto ng = [m](std::uint64_t v) { return v == 0 ? 0 : m - v; };
  return {ng(x.a), ng(x.b), ng(x.c), ng(x.d), m};
}

Mat2 mat_inv(const Mat2& x, const GroupCtx& ctx) {
  const std::uint64_t m = ctx.modulus();
  std::uint64_t det = mat_det(x, ctx);
  std::uint64_t di = inv_mod(det, m);
  auto ng = [m](std::uint64_t v) { return v == 0 ? 0 : m - v; };
  return {mul_mod(x.d, di, m), mul_mod(ng(x.b), di, m), mul_mod(ng(x.c), di, m),
          mul_mod(x.a, di, m), m};
}

Mat2 mat_pow(const Mat2& x, const BigInt& e, const GroupCtx& ctx) {
  Mat2 r = identity(ctx);
  Mat2 b = x;
  check_same(x, ctx);
  BigInt k = e;
  if (k < 0) {
    b = mat_inv(x, ctx);
    k = -k;
  }
  while (k > 0) {
    if ((k & 1) != 0) r = mat_mul(r, b, ctx);
    b = mat_mul(b, b, ctx);
    k >>= 1;
  }
  return r;
}

Mat2 mat_pow(const Mat2& x, std::uint64_t e, const GroupCtx& ctx) {
  Mat2 r = identity(ctx);
  Mat2 b = x;
  check_same(x, ctx);
  while (e) {
    if (e & 1) r = mat_mul(r, b, ctx);
    b = mat_mul(b, b, ctx);
    e >>= 1;
  }
  return r;
}

Mat2 reduce_mod(const Mat2& x, const GroupCtx& src, const GroupCtx& dst) {
  if (src.p() != dst.p()) throw InvalidReduction("reduction between different primes");
  if (dst.n() > src.n()) throw InvalidReduction("target level exceeds source level");
  check_same(x, src);
  const std::uint64_t m = dst.modulus();
  return {x.a % m, x.b % m, x.c % m, x.d % m, m};
}

BigInt element_order(const Mat2& x, const GroupCtx& ctx) {
  if (!in_gl2(x, ctx)) throw NotInvertible("element_order of a non-invertible matrix");
  BigInt N = ctx.gl_order();
  Mat2 I = identity(ctx);
  for (const BigInt& q : prime_factors(N)) {
    while (N % q == 0 && mat_pow(x, BigInt(N / q), ctx) == I) N /= q;
  }
  return N;
}

Mat2 conjugate(const Mat2& x, const Mat2& g, const GroupCtx& ctx) {
  return mat_mul(mat_mul(mat_inv(g, ctx), x, ctx), g, ctx);
}

Code encode(const Mat2& x) {
  if (x.mod > 65536) throw InvalidArgument("packed encoding needs modulus <= 2^16");
  return x.a | (x.b << 16) | (x.c << 32) | (x.d << 48);
}

Mat2 decode(Code c, const GroupCtx& ctx) {
  return {c & 0xffff, (c >> 16) & 0xffff, (c >> 32) & 0xffff, c >> 48, ctx.modulus()};
}

Code mul_code(Code x, Code y, const GroupCtx& ctx) {
  const std::uint64_t m = ctx.modulus();
  std::uint64_t xa = x & 0xffff, xb = (x >> 16) & 0xffff, xc = (x >> 32) & 0xffff, xd = x >> 48;
  std::uint64_t ya = y & 0xffff, yb = (y >> 16) & 0xffff, yc = (y >> 32) & 0xffff, yd = y >> 48;
  std::uint64_t a = (xa * ya + xb * yc) % m;
  std::uint64_t b = (xa * yb + xb * yd) % m;
  std::uint64_t c = (xc * ya + xd * yc) % m;
  std::uint64_t d = (xc * yb + xd * yd) % m;
  return a | (b << 16) | (c << 32) | (d << 48);
}

Code inv_code(Code x, const GroupCtx& ctx) { return encode(mat_inv(decode(x, ctx), ctx)); }

Code reduce_code(Code x, const GroupCtx& src, const GroupCtx& dst) {
  (void)src;
  const std::uint64_t m = dst.modulus();
  std::uint64_t a = (x & 0xffff) % m, b = ((x >> 16) & 0xffff) % m, c = ((x >> 32) & 0xffff) % m,
                d = (x >> 48) % m;
  return a | (b << 16) | (c << 32) | (d << 48);
}

Mat2 parse_mat(const std::string& s, const GroupCtx& ctx) {
  std::string t;
  for (char ch : s)
    if (ch != ' ' && ch != '(' && ch != ')') t += ch;
  std::int64_t v[4];
  std::size_t pos = 0;
  for (int i = 0; i < 4; ++i) {
    char sep = i == 1 ? ';' : ',';
    std::size_t end = i == 3 ? t.size() : t.find(sep, pos);
    if (end == std::string::npos) throw ParseError("bad matrix literal '" + s + "'");
    std::string tok = t.substr(pos, end - pos);
    try {
      std::size_t used = 0;
      v[i] = std::stoll(tok, &used);
      if (used != tok.size()) throw ParseError("bad matrix entry '" + tok + "'");
    } catch (const std::logic_error&) {
      throw ParseError("bad matrix entry '" + tok + "'");
    }
    pos = end + 1;
  }
  return make_mat(ctx, v[0], v[1], v[2], v[3]);
}

std::string format_mat(const Mat2& x) {
  std::ostringstream o;
  o << x.a << ',' << x.b << ';' << x.c << ',' << x.d;
  return o.str();
}

std::string format_signed(const Mat2& x) {
  auto s = [&](std::uint64_t v) -> std::int64_t {
    if (2 * v > x.mod) return static_cast<std::int64_t>(v) - static_cast<std::int64_t>(x.mod);
    return static_cast<std::int64_t>(v);
  };
  std::ostringstream o;
  o << s(x.a) << ',' << s(x.b) << ';' << s(x.c) << ',' << s(x.d);
  return o.str();
}

}  // namespace sl2
