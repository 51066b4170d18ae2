#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sl2/ring.hpp"

namespace sl2 {

// Sorted, duplicate-free set of packed matrices at one level.
class ElementSet {
 public:
  explicit ElementSet(GroupCtx ctx) : ctx_(std::move(ctx)) {}
  ElementSet(GroupCtx ctx, std::vector<Code> codes);

  const GroupCtx& ctx() const { return ctx_; }
  std::size_t size() const { return codes_.size(); }
  bool empty() const { return codes_.empty(); }
  bool contains(Code c) const;
  bool contains(const Mat2& x) const;
  const std::vector<Code>& codes() const { return codes_; }
  std::vector<Mat2> matrices() const;
  std::vector<Code>::const_iterator begin() const { return codes_.begin(); }
  std::vector<Code>::const_iterator end() const { return codes_.end(); }

  bool operator==(const ElementSet& o) const { return ctx_ == o.ctx_ && codes_ == o.codes_; }

 private:
  GroupCtx ctx_;
  std::vector<Code> codes_;
};

std::size_t intersection_size(const ElementSet& x, const ElementSet& y);
// image of the set under reduction to a lower level
ElementSet reduce_set(const ElementSet& s, const GroupCtx& dst);

enum class ClassKind { sigma, tau, u_power, neg_sigma, neg_tau, neg_u, u_square, custom };

struct ConjClassRef {
  ClassKind kind;
  GroupCtx ctx;
  int r = 0;     // for u_power
  Mat2 rep_ = {};  // for custom

  static ConjClassRef of_sigma(const GroupCtx& c) { return {ClassKind::sigma, c}; }
  static ConjClassRef of_tau(const GroupCtx& c) { return {ClassKind::tau, c}; }
  static ConjClassRef of_u_power(const GroupCtx& c, int r);
  static ConjClassRef of_custom(const GroupCtx& c, const Mat2& rep);

  Mat2 rep() const;
  std::string name() const;
};

BigInt group_order(std::uint64_t p, int n);

// closure of gens under right multiplication, starting at I
std::vector<Code> close_codes(const std::vector<Code>& gens, const GroupCtx& ctx,
                              std::uint64_t cap);
ElementSet enumerate_group(const GroupCtx& ctx);

BigInt conj_class_size_formula(const ConjClassRef& ref);
BigInt centralizer_order_formula(const ConjClassRef& ref);

// orbit of rep under conjugation by the given elements (which must generate the acting group)
ElementSet orbit_under(const Mat2& rep, const std::vector<Mat2>& conjugators, const GroupCtx& ctx);
ElementSet conj_class_brute(const Mat2& rep, const GroupCtx& ctx);
// memoized conj_class_brute of ref.rep()
std::shared_ptr<const ElementSet> class_set(const ConjClassRef& ref);
std::shared_ptr<const ElementSet> class_set(const Mat2& rep, const GroupCtx& ctx);

// generators of GL2(Z/p^n): u, transpose u, diag(g, 1) for g generating the units
std::vector<Mat2> gl2_generators(const GroupCtx& ctx);
std::vector<std::uint64_t> unit_group_generators(const GroupCtx& ctx);

// all conjugacy classes of SL2(ctx), each sorted; ordered by smallest code
std::vector<ElementSet> all_classes(const GroupCtx& ctx);
// |{g : gx = xg}| by scanning the group
BigInt centralizer_order_brute(const Mat2& x, const GroupCtx& ctx);

}  // namespace sl2
