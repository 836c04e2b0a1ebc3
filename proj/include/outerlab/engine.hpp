#ifndef OUTERLAB_ENGINE_HPP
#define OUTERLAB_ENGINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "outerlab/hnn.hpp"

// Composition convention used everywhere: compose(f, g) applies f first,
// then g. Every intertwining condition is spelled out elementwise against
// that convention:
//
//   A_K membership for delta with witness a:
//       delta(phi(k)) == a * phi(delta(k)) * a^-1          for all k in K
//   AlphaSpec (delta, a), the automorphism h -> delta(h), t -> a t:
//       delta(K) == K and the condition above
//   BetaSpec (zeta, b), the automorphism h -> zeta(h), t -> b t^-1:
//       zeta(K) == phi(K),
//       b^-1 * zeta(zeta(K)) * b == K,
//       phi^-1(zeta(k)) == b^-1 * zeta(phi(k)) * b          for all k in K
//
// Spec composition and inversion (apply left factor first):
//   (delta1, a1) * (delta2, a2) == (compose(delta1, delta2), delta2(a1) * a2)
//   (delta, a)^-1 == (delta^-1, delta^-1(a^-1))

namespace outerlab {

/// Execution policy for the exhaustive search kernels. Both variants return
/// identical results; the serial one is the reference the tests compare
/// against.
enum class Exec { serial, parallel };

/// The subgroups of H entering the exact-sequence decomposition.
struct StructureBundle {
  Subgroup Z;      ///< Z(H)
  Subgroup CK;     ///< C_H(K)
  Subgroup NK;     ///< N_H(K)
  Subgroup L;      ///< { phi^-1(k) k^-1 : k in K n Z(H) }
  Subgroup J;      ///< Z(H) n Fix(phi)
  Subgroup ZK;     ///< Z(H) K
  Subgroup FixPhi; ///< Fix(phi)
};

struct AlphaSpec {
  Automorphism delta;
  Elt a;
  bool operator==(const AlphaSpec& o) const { return delta == o.delta && a == o.a; }
};

struct BetaSpec {
  Automorphism zeta;
  Elt b;
};

struct AKMember {
  Automorphism delta;
  Elt witness_a; ///< least witness in element order
};

struct TheoremAVerdict {
  bool fa = true;
  std::string fa_reason;
  bool cond1 = true;
  std::string cond1_reason;
  bool cond2 = false;
  std::optional<Elt> cond2_witness;
  bool cond3 = true;
  std::string cond3_reason;
  bool equality = true;
  std::string chain;
};

struct OuterReport {
  StructureBundle bundle;
  long long AK_order = 0;
  long long AK_mod_inn_order = 0;
  long long outV_order = 0;
  long long out0_order = 0;
  long long outH_order = 0;
  bool index2 = false;
  std::optional<BetaSpec> beta;
  TheoremAVerdict thmA;
  bool thmC_applicable = false;
  std::vector<std::string> notes;
};

// --- structure ---------------------------------------------------------------

/// Computes all bundle subgroups by definition-level scans. Asserts the
/// guaranteed facts (L is a normal subgroup of C_H(K); L trivial when
/// Z(H) <= Fix(phi)) and raises ConsistencyError if they fail.
StructureBundle structural_data(const HnnData& hnn);

// --- alpha / beta machinery ---------------------------------------------------

bool alpha_spec_valid(const HnnData& hnn, const AlphaSpec& spec);
bool beta_spec_valid(const HnnData& hnn, const BetaSpec& spec);

/// Spec-level composition and inversion via the identities above.
AlphaSpec compose(const HnnData& hnn, const AlphaSpec& s1, const AlphaSpec& s2);
AlphaSpec inverse(const HnnData& hnn, const AlphaSpec& spec);
AlphaSpec identity_alpha(const HnnData& hnn);

GenMap alpha_genmap(const HnnData& hnn, const AlphaSpec& spec);
GenMap beta_genmap(const HnnData& hnn, const BetaSpec& spec);

/// Word map of a valid spec, with verification: the defining relation is
/// preserved and the explicit inverse spec composes to the identity on
/// generators. Raises InputError on an invalid spec and ConsistencyError if
/// verification fails.
GenMap build_alpha(const HnnData& hnn, const AlphaSpec& spec);

/// Verifies a found beta the same way (relation preservation, two-sided
/// inverse on generators).
void verify_beta(const HnnData& hnn, const BetaSpec& spec);

/// All delta in Aut(H) stabilizing K that intertwine with phi up to an inner
/// twist, each with its least witness. The result is a subgroup of Aut(H)
/// (asserted). `auts` must be the full sorted automorphism list of H.
std::vector<AKMember> compute_A_K(const HnnData& hnn,
                                  const std::vector<Automorphism>& auts,
                                  Exec exec = Exec::parallel);

/// First (zeta, b) in enumeration order (automorphism list order, then
/// element index) satisfying the BetaSpec conditions, verified; nullopt when
/// none exists.
std::optional<BetaSpec> beta_search(const HnnData& hnn,
                                    const std::vector<Automorphism>& auts,
                                    Exec exec = Exec::parallel);

// --- reports -----------------------------------------------------------------

TheoremAVerdict theoremA_verdict(const HnnData& hnn);

/// Full order computation:
///   outV = (|C_H(K)|/|L|) * (|N_H(K)|/|Z(H)K|)
///   out0 = outV * |A_K / (Inn(H) n A_K)|
///   outH = out0 * (2 if a beta exists else 1)
/// |A_K / (Inn(H) n A_K)| is computed both as a coset count and as
/// |A_K| / |{gamma_b : b in N_H(K)}|; disagreement raises ConsistencyError.
OuterReport out_orders(const HnnData& hnn, Exec exec = Exec::parallel);

/// Word map phi_d : h -> h, t -> phi(d) t d^-1 for d in N_H(K).
GenMap tau_map(const HnnData& hnn, Elt d);

} // namespace outerlab

#endif
