#include "outerlab/engine.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "outerlab/config.hpp"
#include "outerlab/errors.hpp"

namespace outerlab {

namespace {

void check_analysis_cap(const HnnData& hnn, const char* what) {
  if (hnn.H().order() > config().analysis_order_cap)
    throw CapError(std::string(what) + " capped at base order " +
                   std::to_string(config().analysis_order_cap) +
                   ", instance has " + std::to_string(hnn.H().order()));
}

}  // namespace

StructureBundle structural_data(const HnnData& hnn) {
  const FiniteGroup& H = hnn.H();
  Subgroup Z = center(H);
  Subgroup CK = centralizer(H, hnn.K().elements());
  Subgroup NK = normalizer(H, hnn.K());
  Subgroup FixPhi = fixed_subgroup(hnn.phi());
  Subgroup J = intersect(Z, FixPhi);

  std::set<Elt> lset;
  for (Elt k : hnn.K().elements())
    if (Z.contains(k)) lset.insert(H.mul(hnn.phi_inv()(k), H.inv(k)));
  std::vector<Elt> lelems(lset.begin(), lset.end());
  if (!is_subgroup_set(H, lelems))
    throw ConsistencyError("L = {phi^-1(k)k^-1 : k in K n Z(H)} is not closed");
  Subgroup L(H, std::move(lelems));
  for (Elt l : L.elements())
    if (!CK.contains(l))
      throw ConsistencyError("L is not contained in C_H(K)");
  if (!is_normal_in(L, CK))
    throw ConsistencyError("L is not normal in C_H(K)");

  Subgroup ZK = subgroup_product(Z, Subgroup(H, hnn.K().elements()));

  bool z_fixed = true;
  for (Elt z : Z.elements())
    if (hnn.phi()(z) != z) {
      z_fixed = false;
      break;
    }
  if (z_fixed && L.size() != 1)
    throw ConsistencyError("Z(H) <= Fix(phi) but L is nontrivial");

  return StructureBundle{std::move(Z),  std::move(CK), std::move(NK),
                         std::move(L),  std::move(J),  std::move(ZK),
                         std::move(FixPhi)};
}

bool alpha_spec_valid(const HnnData& hnn, const AlphaSpec& spec) {
  const FiniteGroup& H = hnn.H();
  if (image_of_set(spec.delta, hnn.K().elements()) != hnn.K().elements())
    return false;
  for (Elt k : hnn.K().elements()) {
    Elt lhs = spec.delta(hnn.phi()(k));
    Elt rhs = H.mul(H.mul(spec.a, hnn.phi()(spec.delta(k))), H.inv(spec.a));
    if (lhs != rhs) return false;
  }
  return true;
}

bool beta_spec_valid(const HnnData& hnn, const BetaSpec& spec) {
  const FiniteGroup& H = hnn.H();
  if (image_of_set(spec.zeta, hnn.K().elements()) != hnn.phiK().elements())
    return false;
  std::vector<Elt> zz =
      image_of_set(spec.zeta, image_of_set(spec.zeta, hnn.K().elements()));
  if (conjugate_set(H, zz, spec.b) != hnn.K().elements()) return false;
  for (Elt k : hnn.K().elements()) {
    Elt lhs = hnn.phi_inv()(spec.zeta(k));
    Elt rhs = H.mul(H.mul(H.inv(spec.b), spec.zeta(hnn.phi()(k))), spec.b);
    if (lhs != rhs) return false;
  }
  return true;
}

AlphaSpec compose(const HnnData& hnn, const AlphaSpec& s1, const AlphaSpec& s2) {
  return AlphaSpec{compose(s1.delta, s2.delta),
                   hnn.H().mul(s2.delta(s1.a), s2.a)};
}

AlphaSpec inverse(const HnnData& hnn, const AlphaSpec& spec) {
  Automorphism inv_delta = inverse(spec.delta);
  return AlphaSpec{inv_delta, inv_delta(hnn.H().inv(spec.a))};
}

AlphaSpec identity_alpha(const HnnData& hnn) {
  return AlphaSpec{identity_automorphism(hnn.H()), 0};
}

GenMap alpha_genmap(const HnnData& hnn, const AlphaSpec& spec) {
  Word t_image;
  t_image.head = spec.a;
  t_image.tail.push_back({+1, 0});
  return GenMap{spec.delta, std::move(t_image)};
}

GenMap beta_genmap(const HnnData& hnn, const BetaSpec& spec) {
  Word t_image;
  t_image.head = spec.b;
  t_image.tail.push_back({-1, 0});
  return GenMap{spec.zeta, std::move(t_image)};
}

namespace {

void verify_genmap_automorphism(const HnnData& hnn, const GenMap& fwd,
                                const GenMap& bwd, const char* what) {
  // relation preservation: psi(t k t^-1) == psi(phi(k)) for all k in K
  for (Elt k : hnn.K().elements()) {
    Word rel = concat(hnn, concat(hnn, t_word(+1), h_word(k)), t_word(-1));
    if (!words_equal(hnn, apply_genmap(hnn, fwd, rel),
                     apply_genmap(hnn, fwd, h_word(hnn.phi()(k)))))
      throw ConsistencyError(std::string(what) +
                             ": defining relation not preserved at k = " +
                             std::to_string(k));
  }
  GenMap id = identity_genmap(hnn);
  if (!genmaps_equal(hnn, compose(hnn, fwd, bwd), id) ||
      !genmaps_equal(hnn, compose(hnn, bwd, fwd), id))
    throw ConsistencyError(std::string(what) +
                           ": explicit inverse does not compose to identity");
}

}  // namespace

GenMap build_alpha(const HnnData& hnn, const AlphaSpec& spec) {
  if (!alpha_spec_valid(hnn, spec))
    throw InputError("alpha spec violates its invariants");
  GenMap fwd = alpha_genmap(hnn, spec);
  GenMap bwd = alpha_genmap(hnn, inverse(hnn, spec));
  verify_genmap_automorphism(hnn, fwd, bwd, "alpha");
  return fwd;
}

void verify_beta(const HnnData& hnn, const BetaSpec& spec) {
  if (!beta_spec_valid(hnn, spec))
    throw InputError("beta spec violates its invariants");
  GenMap fwd = beta_genmap(hnn, spec);
  // inverse: h -> zeta^-1(h), t -> t^-1 zeta^-1(b)
  Automorphism zinv = inverse(spec.zeta);
  Word back;
  back.tail.push_back({-1, zinv(spec.b)});
  GenMap bwd{zinv, std::move(back)};
  verify_genmap_automorphism(hnn, fwd, bwd, "beta");
}

namespace {

// Least a with delta(phi(k)) == a phi(delta(k)) a^-1 for all k, or -1.
Elt least_ak_witness(const HnnData& hnn, const Automorphism& delta) {
  const FiniteGroup& H = hnn.H();
  if (image_of_set(delta, hnn.K().elements()) != hnn.K().elements()) return -1;
  for (Elt a = 0; a < H.order(); ++a) {
    bool ok = true;
    for (Elt k : hnn.K().elements()) {
      Elt lhs = delta(hnn.phi()(k));
      Elt rhs = H.mul(H.mul(a, hnn.phi()(delta(k))), H.inv(a));
      if (lhs != rhs) {
        ok = false;
        break;
      }
    }
    if (ok) return a;
  }
  return -1;
}

// Least b making (zeta, b) a valid beta spec, or -1.
Elt least_beta_witness(const HnnData& hnn, const Automorphism& zeta) {
  if (image_of_set(zeta, hnn.K().elements()) != hnn.phiK().elements()) return -1;
  for (Elt b = 0; b < hnn.H().order(); ++b)
    if (beta_spec_valid(hnn, BetaSpec{zeta, b})) return b;
  return -1;
}

void assert_ak_subgroup(const HnnData& hnn, const std::vector<AKMember>& members) {
  std::set<std::vector<Elt>> images;
  for (const AKMember& m : members) images.insert(m.delta.image());
  for (const AKMember& m1 : members) {
    if (!images.count(inverse(m1.delta).image()))
      throw ConsistencyError("A_K is not closed under inversion");
    for (const AKMember& m2 : members)
      if (!images.count(compose(m1.delta, m2.delta).image()))
        throw ConsistencyError("A_K is not closed under composition");
  }
}

}  // namespace

std::vector<AKMember> compute_A_K(const HnnData& hnn,
                                  const std::vector<Automorphism>& auts,
                                  Exec exec) {
  const int m = static_cast<int>(auts.size());
  std::vector<Elt> witness(m, -1);
  if (exec == Exec::serial) {
    for (int i = 0; i < m; ++i) witness[i] = least_ak_witness(hnn, auts[i]);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < m; ++i) witness[i] = least_ak_witness(hnn, auts[i]);
  }
  std::vector<AKMember> members;
  for (int i = 0; i < m; ++i)
    if (witness[i] >= 0) members.push_back({auts[i], witness[i]});
  assert_ak_subgroup(hnn, members);
  return members;
}

std::optional<BetaSpec> beta_search(const HnnData& hnn,
                                    const std::vector<Automorphism>& auts,
                                    Exec exec) {
  const int m = static_cast<int>(auts.size());
  std::vector<Elt> witness(m, -1);
  if (exec == Exec::serial) {
    for (int i = 0; i < m; ++i) {
      witness[i] = least_beta_witness(hnn, auts[i]);
      if (witness[i] >= 0) break;
    }
  } else {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < m; ++i) witness[i] = least_beta_witness(hnn, auts[i]);
  }
  for (int i = 0; i < m; ++i)
    if (witness[i] >= 0) {
      BetaSpec spec{auts[i], witness[i]};
      verify_beta(hnn, spec);
      return spec;
    }
  return std::nullopt;
}

TheoremAVerdict theoremA_verdict(const HnnData& hnn) {
  TheoremAVerdict v;
  v.fa = true;
  v.fa_reason = "finite groups have property FA";
  v.cond1 = true;
  v.cond1_reason =
      "|a^-1 K a| = |K|, so K cannot be a proper subgroup of any conjugate";
  v.cond3 = true;
  v.cond3_reason = "proper containments between conjugates of K and phi(K) "
                   "are impossible by cardinality";
  for (Elt a = 0; a < hnn.H().order(); ++a) {
    if (conjugate_set(hnn.H(), hnn.K().elements(), a) == hnn.phiK().elements()) {
      v.cond2 = true;
      v.cond2_witness = a;
      break;
    }
  }
  v.equality = true;
  v.chain = "Out_H(G) = Out^H(G) by condition 1; Out^H(G) = Out(G) by "
            "property FA of the finite base";
  return v;
}

OuterReport out_orders(const HnnData& hnn, Exec exec) {
  check_analysis_cap(hnn, "outer-order analysis");
  OuterReport report{.bundle = structural_data(hnn)};
  const StructureBundle& b = report.bundle;

  std::vector<Automorphism> auts = automorphism_group(hnn.H());
  std::vector<AKMember> ak = compute_A_K(hnn, auts, exec);
  report.AK_order = static_cast<long long>(ak.size());

  // route 1: count cosets of Inn(H) n A_K inside A_K
  std::set<std::vector<Elt>> inn_images;
  for (const InnerAutomorphism& ia : inner_automorphisms(hnn.H()))
    inn_images.insert(ia.map.image());
  std::vector<Automorphism> ak_inner;
  for (const AKMember& m : ak)
    if (inn_images.count(m.delta.image())) ak_inner.push_back(m.delta);
  std::set<std::vector<Elt>> coset_keys;
  for (const AKMember& m : ak) {
    std::vector<Elt> key = compose(m.delta, ak_inner.front()).image();
    for (const Automorphism& i : ak_inner)
      key = std::min(key, compose(m.delta, i).image());
    coset_keys.insert(std::move(key));
  }
  long long route1 = static_cast<long long>(coset_keys.size());

  // route 2: |A_K| / |{gamma_d : d in N_H(K)}|
  std::set<std::vector<Elt>> inn_nk;
  for (Elt d : b.NK.elements())
    inn_nk.insert(conjugation_automorphism(hnn.H(), d).image());
  if (ak.size() % inn_nk.size() != 0)
    throw ConsistencyError("|A_K| is not divisible by |Inn(N_H(K))|");
  long long route2 =
      static_cast<long long>(ak.size() / inn_nk.size());

  if (route1 != route2)
    throw ConsistencyError(
        "the two computations of |A_K Inn(H)/Inn(H)| disagree: " +
        std::to_string(route1) + " vs " + std::to_string(route2));
  std::set<std::vector<Elt>> ak_inner_images;
  for (const Automorphism& d : ak_inner) ak_inner_images.insert(d.image());
  if (ak_inner_images != inn_nk)
    throw ConsistencyError("Inn(H) n A_K differs from {gamma_d : d in N_H(K)}");
  report.AK_mod_inn_order = route1;

  if (b.CK.size() % b.L.size() != 0 || b.NK.size() % b.ZK.size() != 0)
    throw ConsistencyError("exact-sequence order divisibility violated");
  report.outV_order = static_cast<long long>(b.CK.size() / b.L.size()) *
                      (b.NK.size() / b.ZK.size());
  report.out0_order = report.outV_order * report.AK_mod_inn_order;

  report.beta = beta_search(hnn, auts, exec);
  report.index2 = report.beta.has_value();
  report.outH_order = report.out0_order * (report.index2 ? 2 : 1);

  report.thmA = theoremA_verdict(hnn);

  bool z_fixed = true;
  for (Elt z : b.Z.elements())
    if (hnn.phi()(z) != z) z_fixed = false;
  report.thmC_applicable = z_fixed;

  report.notes.push_back(
      "witnesses are first hits in enumeration order (automorphism list, then "
      "element index)");
  report.notes.push_back(
      "the outer group is reported through orders and extension data, never a "
      "named isomorphism type");
  return report;
}

GenMap tau_map(const HnnData& hnn, Elt d) {
  Subgroup NK = normalizer(hnn.H(), hnn.K());
  if (!NK.contains(d))
    throw InputError("tau is only defined on N_H(K); element " +
                     std::to_string(d) + " does not normalize K");
  Word t_image;
  t_image.head = hnn.phi()(d);
  t_image.tail.push_back({+1, hnn.H().inv(d)});
  return GenMap{identity_automorphism(hnn.H()), std::move(t_image)};
}

}  // namespace outerlab
