#pragma once

#include <set>

#include "sl2/group.hpp"

namespace sl2 {

// kind is sigma, tau or u_power; alpha is any element of the class, at any level
// >= r+n-m (it is reduced or lifted as needed).
struct FiberDescriptor {
  ClassKind kind;
  Mat2 alpha;
  std::uint64_t p;
  int r = 0, n = 2, m = 1;

  static FiberDescriptor standard(ClassKind kind, std::uint64_t p, int r, int n, int m);
  GroupCtx top() const { return GroupCtx(p, r + n); }
  GroupCtx mid() const { return GroupCtx(p, r + m); }
  GroupCtx low() const { return GroupCtx(p, r + n - m); }
  Mat2 class_rep(const GroupCtx& ctx) const;
};

// throws PreconditionError when outside the structure lemma's hypotheses
void check_fiber_hypotheses(ClassKind kind, std::uint64_t p, int r, int n, int m);
bool fiber_hypotheses_hold(ClassKind kind, std::uint64_t p, int r, int n, int m);

// alpha^-1 (f^-1(alpha) ∩ Conj(alpha)) at level r+n, straight from the definition
ElementSet fiber_translate(const FiberDescriptor& d);
// fiber_translate plus the structure assertions (subgroup, order, shape, commutator form)
ElementSet fiber_group(const FiberDescriptor& d);
// {1 + p^m (X a^-1 - a^-1 X)}
ElementSet commutator_form(const FiberDescriptor& d);
// closed-form parametrisation; only defined for the standard representative
ElementSet explicit_form(ClassKind kind, std::uint64_t p, int r, int n, int m);

bool verify_orthogonality(const FiberDescriptor& d);

// distinct sizes of the fibers of Conj(alpha) at level hi over level lo
std::set<std::size_t> class_fiber_sizes(ClassKind kind, std::uint64_t p, int r, int hi, int lo);

// number of class elements mod p^(r+n-m) sharing V with alpha, by brute force
std::uint64_t recovery_count(ClassKind kind, std::uint64_t p, int r, int n, int m);
// the corollaries' case table
std::uint64_t recovery_count_formula(ClassKind kind, std::uint64_t p, int r, int n, int m);

// {(x y; -y x)} ∩ Conj(sigma), {(x y; -y x-y)} ∩ Conj(tau), {1 + p^r (x y; 0 x)} ∩ Conj(u^p^r)
// at level r+n (r = 0 for sigma, tau)
ElementSet recovery_set(ClassKind kind, std::uint64_t p, int r, int n);
// the element lists stated for those intersections
ElementSet recovery_set_listed(ClassKind kind, std::uint64_t p, int r, int n);

}  // namespace sl2
