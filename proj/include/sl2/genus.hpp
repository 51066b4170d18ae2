#pragma once

#include <optional>

#include "sl2/subgroup.hpp"

namespace sl2 {

struct GenusReport {
  BigInt order;
  BigInt index;
  BigInt count_sigma, count_tau;
  Rational cusp_ratio;
  Rational delta;
  std::optional<BigInt> genus;
  BigInt fix_sigma, fix_tau;

  bool operator==(const GenusReport&) const = default;
};

int legendre(std::int64_t a, std::uint64_t p);

BigInt count_in_subgroup(const Subgroup& h, const ConjClassRef& ref);
BigInt count_in_subgroup(const Subgroup& h, const Mat2& rep);
// |H ∩ Conj(a)| / |Conj(a)|, orbit computed by brute force
Rational class_ratio(const Subgroup& h, const Mat2& rep);

// Left cosets gH of SL2(ctx); needs the whole group materialized.
class CosetSpace {
 public:
  explicit CosetSpace(const Subgroup& h);
  std::size_t size() const { return reps_.size(); }
  std::uint32_t coset_of(Code g) const;
  // number of cosets with a·gH = gH
  std::uint64_t fixed_by(const Mat2& a) const;
  // number of <a>-orbits on the cosets
  std::uint64_t orbits_of(const Mat2& a) const;

 private:
  GroupCtx ctx_;
  ElementSet group_;
  std::vector<std::uint32_t> id_;
  std::vector<Code> reps_;
};

BigInt fix_points_direct(const Subgroup& h, const Mat2& a);
BigInt fix_points_identity(const Subgroup& h, const Mat2& a);
// both routes; ConsistencyError if they differ
BigInt fix_points(const Subgroup& h, const Mat2& a);

// #(I\G/H) with I = <u>, counted on cosets
BigInt cusp_count_direct(const Subgroup& h);
// sum over s < t of (p-1)/p^(s+1) * ratio(u^(p^s)) + 1/p^t; t = n gives the exact value
Rational cusp_ratio_formula(const Subgroup& h, int t = -1);
// both routes; ConsistencyError if they differ
Rational cusp_orbit_ratio(const Subgroup& h);

Rational delta(const Subgroup& h);
BigInt genus(const Subgroup& h);
BigInt genus_with_minus_one(const Subgroup& h);
// 1 + [G:H]/12 - Fix_sigma/4 - Fix_tau/3 - #(I\G/H)/2 from coset counts
Rational genus_by_definition(const Subgroup& h);

enum class CartanKind { B, C, D };
Rational closed_form_genus(CartanKind kind, std::uint64_t p);

GenusReport genus_report(const Subgroup& h);

}  // namespace sl2
