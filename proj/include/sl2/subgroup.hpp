#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sl2/group.hpp"

namespace sl2 {

enum class Ambient { SL2, GL2 };

class Subgroup {
 public:
  // lazily materialized closure of gens
  Subgroup(GroupCtx ctx, std::vector<Mat2> gens, Ambient ambient = Ambient::SL2);
  // already-known element set (must be a group)
  static Subgroup from_elements(ElementSet elems, Ambient ambient = Ambient::SL2,
                                std::vector<Mat2> gens = {});

  const GroupCtx& ctx() const { return ctx_; }
  Ambient ambient() const { return ambient_; }
  // for subgroups built from element sets, a generating set is computed on demand
  const std::vector<Mat2>& generators() const;
  const ElementSet& elements() const;
  std::size_t order() const { return elements().size(); }
  // [SL2 : H]; SL2 ambient only
  BigInt index() const;
  bool contains(const Mat2& x) const { return elements().contains(x); }
  bool contains_minus_one() const { return contains(minus_one(ctx_)); }

 private:
  struct State {
    std::once_flag elems_once, gens_once;
    std::optional<ElementSet> elems;
    std::optional<std::vector<Mat2>> gens;
  };
  GroupCtx ctx_;
  Ambient ambient_;
  std::shared_ptr<State> st_;
};

Subgroup closure(const std::vector<Mat2>& gens, const GroupCtx& ctx,
                 Ambient ambient = Ambient::SL2);
// closure that gives up past cap elements
std::optional<Subgroup> try_closure(const std::vector<Mat2>& gens, const GroupCtx& ctx,
                                    std::uint64_t cap, Ambient ambient = Ambient::SL2);

enum class ExceptionalType { A4, S4, A5 };
std::string to_string(ExceptionalType t);

struct SubgroupKind {
  enum Tag { Borel, SplitCartanNorm, NonsplitCartanNorm, Exceptional, F, A1, FullSL2 } tag;
  ExceptionalType ex = ExceptionalType::A4;
};

std::uint64_t smallest_nonresidue(std::uint64_t p);
Subgroup standard_subgroup(SubgroupKind kind, std::uint64_t p);
// image in PGL2(F_p) found by seeded random search; throws on failure or unavailability
Subgroup exceptional_subgroup(std::uint64_t p, ExceptionalType t, std::uint64_t seed = 1);
bool exceptional_available(std::uint64_t p, ExceptionalType t);

// a lift of x (det 1 mod p^m) to SL2 at level dst
Mat2 lift_to_sl2(const Mat2& x, const GroupCtx& src, const GroupCtx& dst);
// (1 + p^m M2)^{det=1} at level dst
ElementSet congruence_kernel(const GroupCtx& dst, int m);
Subgroup preimage(const Subgroup& h, const GroupCtx& dst);
Subgroup reduce_subgroup(const Subgroup& h, const GroupCtx& dst);
// H_s = H ∩ (1 + p^s M2)
Subgroup filtration_level(const Subgroup& h, int s);
bool is_slim(const Subgroup& h);
Subgroup with_minus_one(const Subgroup& h);
// g^-1 H g
Subgroup conjugate_subgroup(const Subgroup& h, const Mat2& g);

// Spec strings: B, C, D, E:A4|S4|A5, F, A1, full, gens:a,b;c,d|..., preimage:<spec>@<n>.
// n is the level used by "full" and "gens"; base kinds keep their own level.
Subgroup parse_subgroup_spec(const std::string& spec, std::uint64_t p, int n);

// All subgroups of a finite group given by its element set, via cyclic extension.
// Throws FeasibilityError above max_order elements or max_count subgroups.
std::vector<Subgroup> enumerate_subgroups(const Subgroup& group, std::size_t max_order = 10000,
                                          std::size_t max_count = 2'000'000);

// Random subgroups: each draw closes 1..3 elements from draw(), optionally raised to a
// random p-power; kept if the closure stays within cap and accept() holds.
struct SampleOptions {
  std::size_t count = 100;
  std::size_t max_attempts = 100000;
  std::uint64_t closure_cap = 200000;
  int max_gens = 3;
};
std::vector<Subgroup> sample_subgroups(const GroupCtx& ctx,
                                       const std::function<Mat2(std::mt19937_64&)>& draw,
                                       const std::function<bool(const Subgroup&)>& accept,
                                       const SampleOptions& opt, std::mt19937_64& rng,
                                       Ambient ambient = Ambient::SL2);
// uniform element of a materialized subgroup
std::function<Mat2(std::mt19937_64&)> uniform_draw(const Subgroup& k);
// uniform element of the preimage of k at level dst, without materializing it
std::function<Mat2(std::mt19937_64&)> preimage_draw(const Subgroup& k, const GroupCtx& dst);

enum class Section2Lemma { L2_1, L2_5 };
struct Section2Result {
  bool ok = true;
  std::size_t checked = 0;
  std::string notes;
};
Section2Result section2_property_check(Section2Lemma which, int trials, std::uint64_t seed = 1);

}  // namespace sl2
