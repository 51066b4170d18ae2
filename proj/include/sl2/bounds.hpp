#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sl2/fiber.hpp"
#include "sl2/subgroup.hpp"

namespace sl2 {

enum class BoundKind { a_sigma_p, a_tau_p, a_tau_3, a_u_p, a_u_2, a_sigma_2, a_tau_2, b_u_2 };
std::string to_string(BoundKind k);
BoundKind parse_bound_kind(const std::string& s);

// exact value of the bound sequence; PreconditionError outside its domain
BigInt bound_sequence(BoundKind kind, std::uint64_t p, int n);
bool bound_domain_ok(BoundKind kind, std::uint64_t p, int n);

// offset s of the correction term's reduction level r+s, its coefficient, and the constant
// subtracted from the reduced count
struct Correction {
  int s;
  BigInt coefficient;
  BigInt offset;
};
Correction correction_term(BoundKind kind, std::uint64_t p, int n);
// bound_sequence + coefficient * (reduced - offset)
BigInt corollary_rhs(BoundKind kind, std::uint64_t p, int n, const BigInt& reduced);

// bounds that apply to |H ∩ Conj(alpha)| for H at level r+n (n = level - r)
std::vector<BoundKind> applicable_bounds(ClassKind kind, std::uint64_t p, int n);

// One audited inequality (or set relation) of a bound proof.
struct ChainStep {
  std::string label;
  std::string relation;  // "<=", "==", "subset"
  BigInt lhs, rhs;
  bool ok = true;
};

struct SlimBoundAudit {
  BoundKind kind;
  int r = 0, n = 0;
  BigInt count;    // |H ∩ Conj(alpha)|
  int s = 1;       // reduction level offset of the corollary's correction term
  BigInt reduced;  // |(H/H_{r+s}) ∩ Conj(alpha)|
  BigInt rhs;      // the corollary's right-hand side
  bool chain_audited = false;
  std::vector<ChainStep> steps;
  bool holds = true;  // final inequality and every audited step
};

// Audits every bound applicable to alpha; throws PreconditionError if H is not slim
// or nothing applies.
std::vector<SlimBoundAudit> audit_slim_bounds(const Subgroup& h, const ConjClassRef& alpha);
SlimBoundAudit audit_slim_bound(const Subgroup& h, const ConjClassRef& alpha, BoundKind kind);
bool check_slim_bound(const Subgroup& h, const ConjClassRef& alpha);
// the classes sigma, tau, u^(p^r) at h's level that have at least one applicable bound
std::vector<ConjClassRef> bounded_classes(const GroupCtx& ctx);

// |H_t / H_s| <= p^(2(s-t)) for all valid t < s, and the layer orders increase up to p^2
struct FiltrationAudit {
  bool ok = true;
  std::vector<std::size_t> layer_orders;  // |H_{i-1}/H_i| for i = 1..n
  std::string notes;
};
FiltrationAudit filtration_bound(const Subgroup& h);

struct ShadowAudit {
  bool ok = true;
  std::size_t checked = 0;  // instances where the hypothesis "H-layer differs from V" held
  std::size_t skipped = 0;  // instances outside the structure lemma's hypotheses
  std::string notes;
};
// fiber images mod p^(r+t+1) have at most p elements when the layer differs from V
ShadowAudit fiber_image_shadow(const Subgroup& h, const ConjClassRef& alpha);
// fibers over alpha' mod p^(r+i+delta) have at most p^(n-1-delta) elements (H slim)
ShadowAudit fiber_count_shadow(const Subgroup& h, const ConjClassRef& alpha);

// the exponents of the main statements; values are read-only constants
int n_p_bound(std::uint64_t p);
int n_prime(std::uint64_t p);

}  // namespace sl2
