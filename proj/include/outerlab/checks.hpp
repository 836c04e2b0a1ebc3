#ifndef OUTERLAB_CHECKS_HPP
#define OUTERLAB_CHECKS_HPP

#include "outerlab/oracle.hpp"

namespace outerlab {

/// Splitting of the vertical sequence when Z(H) <= Fix(phi): emits nodes
/// "thmC-split" (C_K n N_K trivial, C_K N_K covers the inner-delta classes,
/// L trivial) and "thmC-action" (conjugating the class of (1, a) by
/// (gamma_b, b^-1 phi(b)) gives the class of (1, phi(b)^-1 a phi(b))).
/// Both nodes are marked not-applicable when Z(H) is not fixed pointwise.
CheckLedger theoremC_split_check(const HnnData& hnn, const StructureBundle& bundle,
                                 const OuterClasses& oc);

/// Node "chi2bar-kernel-JK": b in N_H(K) maps to a trivial class via
/// (gamma_b, b^-1 phi(b)) exactly when b lies in JK; also checks the
/// homomorphism law against the materialized table.
CheckEntry chi2bar_kernel_check(const HnnData& hnn, const StructureBundle& bundle,
                                const OuterClasses& oc);

/// Node "embedding": for K normal in V <= N_H(K) with V n Z(H) n Fix(phi)
/// trivial, distinct cosets vK land in distinct classes and the index of the
/// image divides |C_H(K)| * |N_H(K) : V|. Raises InputError when K is not
/// normal in V or V is not inside N_H(K); marked not-applicable when the
/// triviality hypothesis fails.
CheckEntry lemma_embedding_check(const HnnData& hnn, const Subgroup& V,
                                 const StructureBundle& bundle,
                                 const OuterClasses& oc);

/// Node "semidirect-complement": when A_K <= Inn(H) and C_H(K) = 1, out0
/// equals |N_H(K)|/|K| and the maps phi_d form a complement: pairwise
/// non-equivalent, exactly multiplicative, meeting the inner automorphisms
/// only at the identity, and covering every class.
CheckEntry lemma_semidirect_aut_check(const HnnData& hnn,
                                      const StructureBundle& bundle,
                                      const OuterReport& report,
                                      const OuterClasses& oc);

/// Node "tau-hom-kernel": phi_{d1} phi_{d2} = phi_{d1 d2} on generators for
/// every pair in N_H(K); phi_d is the identity map exactly when d is in K
/// (the kernel of tau), and is inner exactly when d is in JK (the kernel of
/// the induced map on outer classes).
CheckEntry tau_check(const HnnData& hnn, const StructureBundle& bundle);

/// Node "thmA": the equality verdict with its justification chain, plus the
/// agreement of the exhaustive condition-2 search with an independent
/// conjugacy-orbit scan.
CheckEntry theoremA_check(const HnnData& hnn, const OuterReport& report);

/// Node "alpha-identities": composition and inversion identities checked on
/// generators for all pairs of enumerated specs. Marked not-applicable when
/// |Aut(H)| * |H| exceeds pair_budget.
CheckEntry alpha_identities_check(const HnnData& hnn, const OuterClasses& oc,
                                  long long pair_budget = 1000);

/// Runs the engine, the oracle, and every node check; the ledger drives the
/// verify command and the acceptance suite.
struct VerifyResult {
  OuterReport report;
  OuterClasses classes;
  CheckLedger ledger;
};

VerifyResult run_verify(const HnnData& hnn, Exec exec = Exec::parallel);

} // namespace outerlab

#endif
