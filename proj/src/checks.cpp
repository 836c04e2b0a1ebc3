#include "outerlab/checks.hpp"

#include <algorithm>
#include <set>

#include "outerlab/errors.hpp"

namespace outerlab {

namespace {

bool z_fixed_pointwise(const HnnData& hnn, const StructureBundle& bundle) {
  for (Elt z : bundle.Z.elements())
    if (hnn.phi()(z) != z) return false;
  return true;
}

AlphaSpec chi2bar_spec(const HnnData& hnn, Elt b) {
  const FiniteGroup& H = hnn.H();
  return AlphaSpec{conjugation_automorphism(H, b),
                   H.mul(H.inv(b), hnn.phi()(b))};
}

std::vector<int> inner_delta_classes(const HnnData& hnn, const OuterClasses& oc) {
  std::set<std::vector<Elt>> inn_images;
  for (const InnerAutomorphism& ia : inner_automorphisms(hnn.H()))
    inn_images.insert(ia.map.image());
  std::vector<int> out;
  for (int c = 0; c < oc.alpha_class_count; ++c)
    if (inn_images.count(std::get<AlphaSpec>(oc.classes[c].rep).delta.image()))
      out.push_back(c);
  return out;
}

}  // namespace

CheckLedger theoremC_split_check(const HnnData& hnn, const StructureBundle& bundle,
                                 const OuterClasses& oc) {
  CheckLedger ledger;
  if (!z_fixed_pointwise(hnn, bundle)) {
    ledger.entries.push_back({"thmC-split", false, true,
                              "not applicable: Z(H) is not fixed by phi"});
    ledger.entries.push_back({"thmC-action", false, true,
                              "not applicable: Z(H) is not fixed by phi"});
    return ledger;
  }
  const FiniteGroup& H = hnn.H();

  bool split_ok = true;
  std::string detail;
  if (bundle.L.size() != 1) {
    split_ok = false;
    detail = "L is nontrivial although Z(H) <= Fix(phi)";
  }

  // C_K: classes of (1, a); N_K: classes of (gamma_b, b^-1 phi(b))
  Automorphism id = identity_automorphism(H);
  std::set<int> ck_classes, nk_classes;
  std::vector<Elt> ck_values;
  for (Elt a = 0; a < H.order(); ++a) {
    AlphaSpec s{id, a};
    if (alpha_spec_valid(hnn, s)) {
      ck_classes.insert(class_of_alpha(hnn, oc, s));
      ck_values.push_back(a);
    }
  }
  for (Elt b : bundle.NK.elements()) {
    AlphaSpec s = chi2bar_spec(hnn, b);
    if (!alpha_spec_valid(hnn, s))
      throw ConsistencyError("(gamma_b, b^-1 phi(b)) is not a valid spec for "
                             "a normalizing b");
    nk_classes.insert(class_of_alpha(hnn, oc, s));
  }

  if (split_ok) {
    std::set<int> meet;
    std::set_intersection(ck_classes.begin(), ck_classes.end(),
                          nk_classes.begin(), nk_classes.end(),
                          std::inserter(meet, meet.begin()));
    if (meet != std::set<int>{0}) {
      split_ok = false;
      detail = "C_K and N_K share a nontrivial class";
    }
  }
  if (split_ok) {
    std::vector<int> outv = inner_delta_classes(hnn, oc);
    std::set<int> outv_set(outv.begin(), outv.end());
    std::set<int> products;
    for (int c : ck_classes)
      for (int n : nk_classes) products.insert(oc.out0_group.mul(c, n));
    if (products != outv_set) {
      split_ok = false;
      detail = "C_K * N_K does not cover the inner-delta classes";
    } else if (ck_classes.size() * nk_classes.size() != outv_set.size()) {
      split_ok = false;
      detail = "|C_K| * |N_K| differs from |Out^(V)|";
    } else {
      detail = "split verified: " + std::to_string(ck_classes.size()) + " x " +
               std::to_string(nk_classes.size()) + " classes";
    }
  }
  ledger.entries.push_back({"thmC-split", true, split_ok, detail});

  // action: conjugating the class of (1, a) by (gamma_b, b^-1 phi(b)) gives
  // the class of (1, phi(b)^-1 a phi(b))
  bool action_ok = true;
  std::string action_detail = "action identity verified on " +
                              std::to_string(ck_values.size()) + " x " +
                              std::to_string(bundle.NK.size()) + " pairs";
  for (Elt a : ck_values) {
    for (Elt b : bundle.NK.elements()) {
      AlphaSpec x{id, a};
      AlphaSpec g = chi2bar_spec(hnn, b);
      AlphaSpec conj = compose(hnn, compose(hnn, inverse(hnn, g), x), g);
      AlphaSpec expect{id, H.conj(a, hnn.phi()(b))};
      if (!alpha_spec_valid(hnn, expect)) {
        action_ok = false;
        action_detail = "expected action value is not a valid spec";
        break;
      }
      if (class_of_alpha(hnn, oc, conj) != class_of_alpha(hnn, oc, expect)) {
        action_ok = false;
        action_detail = "action mismatch at a=" + std::to_string(a) +
                        ", b=" + std::to_string(b);
        break;
      }
    }
    if (!action_ok) break;
  }
  ledger.entries.push_back({"thmC-action", true, action_ok, action_detail});
  return ledger;
}

CheckEntry chi2bar_kernel_check(const HnnData& hnn, const StructureBundle& bundle,
                                const OuterClasses& oc) {
  Subgroup JK = subgroup_product(bundle.J, hnn.K());
  std::vector<Elt> kernel;
  std::vector<int> class_of_b(hnn.H().order(), -1);
  for (Elt b : bundle.NK.elements()) {
    int c = class_of_alpha(hnn, oc, chi2bar_spec(hnn, b));
    class_of_b[b] = c;
    if (oc.classes[c].is_trivial) kernel.push_back(b);
  }
  if (kernel != JK.elements())
    return {"chi2bar-kernel-JK", true, false,
            "kernel has " + std::to_string(kernel.size()) +
                " elements, JK has " + std::to_string(JK.size())};
  for (Elt b1 : bundle.NK.elements())
    for (Elt b2 : bundle.NK.elements()) {
      int lhs = class_of_b[hnn.H().mul(b1, b2)];
      int rhs = oc.out0_group.mul(class_of_b[b1], class_of_b[b2]);
      if (lhs != rhs)
        return {"chi2bar-kernel-JK", true, false,
                "homomorphism law fails at (" + std::to_string(b1) + "," +
                    std::to_string(b2) + ")"};
    }
  return {"chi2bar-kernel-JK", true, true,
          "kernel = JK of order " + std::to_string(JK.size())};
}

CheckEntry lemma_embedding_check(const HnnData& hnn, const Subgroup& V,
                                 const StructureBundle& bundle,
                                 const OuterClasses& oc) {
  for (Elt v : V.elements())
    if (!bundle.NK.contains(v))
      throw InputError("V must lie inside N_H(K)");
  for (Elt v : V.elements())
    for (Elt k : hnn.K().elements())
      if (!hnn.K().contains(hnn.H().conj(k, v)))
        throw InputError("K must be normal in V");

  for (Elt v : V.elements())
    if (v != 0 && bundle.J.contains(v))
      return {"embedding", false, true,
              "not applicable: V meets Z(H) n Fix(phi) nontrivially"};

  // coset transversal of K in V
  std::set<int> image;
  std::set<Elt> seen_cosets;
  int cosets = 0;
  for (Elt v : V.elements()) {
    Elt rep = hnn.H().order();
    for (Elt k : hnn.K().elements()) rep = std::min(rep, hnn.H().mul(v, k));
    if (!seen_cosets.insert(rep).second) continue;
    ++cosets;
    image.insert(class_of_alpha(hnn, oc, chi2bar_spec(hnn, v)));
  }
  if (static_cast<int>(image.size()) != cosets)
    return {"embedding", true, false,
            "distinct cosets of K in V do not reach distinct classes"};

  std::vector<int> outv = inner_delta_classes(hnn, oc);
  long long outv_order = static_cast<long long>(outv.size());
  if (outv_order % image.size() != 0)
    return {"embedding", true, false,
            "image order does not divide |Out^(V)|"};
  long long index = outv_order / static_cast<long long>(image.size());
  long long bound = static_cast<long long>(bundle.CK.size()) *
                    (bundle.NK.size() / V.size());
  if (bound % index != 0)
    return {"embedding", true, false,
            "index " + std::to_string(index) + " does not divide " +
                std::to_string(bound)};
  return {"embedding", true, true,
          "V/K of order " + std::to_string(cosets) + " embeds with index " +
              std::to_string(index) + " dividing " + std::to_string(bound)};
}

CheckEntry lemma_semidirect_aut_check(const HnnData& hnn,
                                      const StructureBundle& bundle,
                                      const OuterReport& report,
                                      const OuterClasses& oc) {
  if (report.AK_mod_inn_order != 1 || bundle.CK.size() != 1)
    return {"semidirect-complement", false, true,
            "not applicable: needs A_K <= Inn(H) and C_H(K) = 1"};

  if (report.out0_order !=
      static_cast<long long>(bundle.NK.size()) / hnn.K().size())
    return {"semidirect-complement", true, false,
            "out0 differs from |N_H(K)|/|K|"};

  // transversal of K in N_H(K)
  std::vector<Elt> reps;
  std::set<Elt> seen;
  for (Elt d : bundle.NK.elements()) {
    Elt rep = hnn.H().order();
    for (Elt k : hnn.K().elements()) rep = std::min(rep, hnn.H().mul(d, k));
    if (seen.insert(rep).second) reps.push_back(rep);
  }

  std::vector<GenMap> phi_d;
  for (Elt d : reps) phi_d.push_back(tau_map(hnn, d));
  GenMap id = identity_genmap(hnn);

  std::set<int> covered;
  for (size_t i = 0; i < reps.size(); ++i) {
    bool in_K = hnn.K().contains(reps[i]);
    bool inner = genmap_inner_witness(hnn, phi_d[i]).has_value();
    if (inner != in_K)
      return {"semidirect-complement", true, false,
              "phi_d inner test disagrees with d in K at d = " +
                  std::to_string(reps[i])};
    if (in_K && !genmaps_equal(hnn, phi_d[i], id))
      return {"semidirect-complement", true, false,
              "phi_d with d in K is not the identity map"};
    covered.insert(class_of_alpha(hnn, oc, chi2bar_spec(hnn, reps[i])));
    for (size_t j = 0; j < reps.size(); ++j) {
      if (i < j && genmaps_equivalent(hnn, phi_d[i], phi_d[j]))
        return {"semidirect-complement", true, false,
                "phi_d maps for distinct cosets are equivalent"};
      GenMap prod = compose(hnn, phi_d[i], phi_d[j]);
      GenMap expect = tau_map(hnn, hnn.H().mul(reps[i], reps[j]));
      if (!genmaps_equal(hnn, prod, expect))
        return {"semidirect-complement", true, false,
                "phi_d is not exactly multiplicative"};
    }
  }
  if (static_cast<long long>(covered.size()) != report.out0_order)
    return {"semidirect-complement", true, false,
            "complement does not cover every class"};
  return {"semidirect-complement", true, true,
          "complement of order " + std::to_string(reps.size()) + " verified"};
}

CheckEntry tau_check(const HnnData& hnn, const StructureBundle& bundle) {
  const Subgroup& NK = bundle.NK;
  Subgroup JK = subgroup_product(bundle.J, hnn.K());
  std::vector<GenMap> maps;
  maps.reserve(NK.size());
  for (Elt d : NK.elements()) maps.push_back(tau_map(hnn, d));
  for (int i = 0; i < NK.size(); ++i)
    for (int j = 0; j < NK.size(); ++j) {
      Elt prod = hnn.H().mul(NK.elements()[i], NK.elements()[j]);
      int pidx = static_cast<int>(
          std::lower_bound(NK.elements().begin(), NK.elements().end(), prod) -
          NK.elements().begin());
      if (!genmaps_equal(hnn, compose(hnn, maps[i], maps[j]), maps[pidx]))
        return {"tau-hom-kernel", true, false,
                "tau is not multiplicative at (" +
                    std::to_string(NK.elements()[i]) + "," +
                    std::to_string(NK.elements()[j]) + ")"};
    }
  GenMap id = identity_genmap(hnn);
  for (int i = 0; i < NK.size(); ++i) {
    Elt d = NK.elements()[i];
    if (genmaps_equal(hnn, maps[i], id) != hnn.K().contains(d))
      return {"tau-hom-kernel", true, false,
              "kernel of tau differs from K at d = " + std::to_string(d)};
    if (genmap_inner_witness(hnn, maps[i]).has_value() != JK.contains(d))
      return {"tau-hom-kernel", true, false,
              "inner phi_d set differs from JK at d = " + std::to_string(d)};
  }
  return {"tau-hom-kernel", true, true,
          "homomorphism law on " + std::to_string(NK.size()) +
              "^2 pairs, kernel exactly K, inner set exactly JK"};
}

CheckEntry theoremA_check(const HnnData& hnn, const OuterReport& report) {
  const TheoremAVerdict& v = report.thmA;
  if (!(v.fa && v.cond1 && v.cond3 && v.equality))
    return {"thmA", true, false,
            "a finite instance failed a cardinality-forced condition"};
  // independent route for condition 2: orbit of K under conjugation
  std::set<std::vector<Elt>> orbit;
  std::vector<std::vector<Elt>> queue{hnn.K().elements()};
  orbit.insert(queue[0]);
  for (size_t qi = 0; qi < queue.size(); ++qi)
    for (Elt g = 0; g < hnn.H().order(); ++g) {
      std::vector<Elt> conj = conjugate_set(hnn.H(), queue[qi], g);
      if (orbit.insert(conj).second) queue.push_back(std::move(conj));
    }
  bool orbit_hit = orbit.count(hnn.phiK().elements()) > 0;
  if (orbit_hit != v.cond2)
    return {"thmA", true, false,
            "condition-2 search disagrees with the conjugacy orbit"};
  if (v.cond2) {
    Elt a = *v.cond2_witness;
    if (conjugate_set(hnn.H(), hnn.K().elements(), a) != hnn.phiK().elements())
      return {"thmA", true, false, "condition-2 witness does not conjugate"};
  }
  return {"thmA", true, true,
          std::string("Out_H(G) = Out(G); ") + v.chain +
              (v.cond2 ? "; condition 2 holds" : "; condition 2 fails (allowed)")};
}

CheckEntry alpha_identities_check(const HnnData& hnn, const OuterClasses& oc,
                                  long long pair_budget) {
  long long pool = static_cast<long long>(automorphism_group(hnn.H()).size()) *
                   hnn.H().order();
  if (pool > pair_budget)
    return {"alpha-identities", false, true,
            "not applicable: |Aut(H)|*|H| = " + std::to_string(pool) +
                " exceeds the pair budget"};
  for (const AlphaSpec& s1 : oc.specs) {
    GenMap f1 = alpha_genmap(hnn, s1);
    AlphaSpec inv_spec = inverse(hnn, s1);
    if (!alpha_spec_valid(hnn, inv_spec))
      return {"alpha-identities", true, false, "inverse spec is invalid"};
    if (!genmaps_equal(hnn, compose(hnn, f1, alpha_genmap(hnn, inv_spec)),
                       identity_genmap(hnn)))
      return {"alpha-identities", true, false,
              "inverse identity fails on generators"};
    for (const AlphaSpec& s2 : oc.specs) {
      AlphaSpec prod = compose(hnn, s1, s2);
      if (!alpha_spec_valid(hnn, prod))
        return {"alpha-identities", true, false, "composed spec is invalid"};
      if (!genmaps_equal(hnn, compose(hnn, f1, alpha_genmap(hnn, s2)),
                         alpha_genmap(hnn, prod)))
        return {"alpha-identities", true, false,
                "composition identity fails on generators"};
    }
  }
  return {"alpha-identities", true, true,
          "verified on " + std::to_string(oc.specs.size()) + "^2 spec pairs"};
}

VerifyResult run_verify(const HnnData& hnn, Exec exec) {
  VerifyResult r{out_orders(hnn, exec), outer_classes(hnn, exec), {}};
  r.ledger = cross_check(hnn, r.report, r.classes);
  CheckLedger thmC = theoremC_split_check(hnn, r.report.bundle, r.classes);
  r.ledger.entries.insert(r.ledger.entries.end(), thmC.entries.begin(),
                          thmC.entries.end());
  r.ledger.entries.push_back(
      chi2bar_kernel_check(hnn, r.report.bundle, r.classes));
  r.ledger.entries.push_back(tau_check(hnn, r.report.bundle));
  r.ledger.entries.push_back(theoremA_check(hnn, r.report));
  r.ledger.entries.push_back(
      lemma_embedding_check(hnn, r.report.bundle.NK, r.report.bundle, r.classes));
  r.ledger.entries.push_back(
      lemma_semidirect_aut_check(hnn, r.report.bundle, r.report, r.classes));
  r.ledger.entries.push_back(alpha_identities_check(hnn, r.classes));
  return r;
}

}  // namespace outerlab
