#include "outerlab/oracle.hpp"

#include <algorithm>
#include <set>

#include "outerlab/config.hpp"
#include "outerlab/errors.hpp"

namespace outerlab {

namespace {

std::vector<Elt> spec_key(const AlphaSpec& s) {
  std::vector<Elt> key = s.delta.image();
  key.push_back(s.a);
  return key;
}

std::vector<AlphaSpec> make_inner_specs(const HnnData& hnn) {
  const FiniteGroup& H = hnn.H();
  std::vector<AlphaSpec> out;
  std::set<std::vector<Elt>> seen;
  for (Elt k : hnn.K().elements()) {
    AlphaSpec s{conjugation_automorphism(H, k), H.mul(H.inv(k), hnn.phi()(k))};
    if (seen.insert(spec_key(s)).second) out.push_back(std::move(s));
  }
  return out;
}

std::vector<Elt> canonical_key(const HnnData& hnn,
                               const std::vector<AlphaSpec>& inner_specs,
                               const AlphaSpec& s) {
  std::vector<Elt> best = spec_key(compose(hnn, inner_specs.front(), s));
  for (size_t i = 1; i < inner_specs.size(); ++i)
    best = std::min(best, spec_key(compose(hnn, inner_specs[i], s)));
  return best;
}

int locate_class(const HnnData& hnn, const OuterClasses& oc,
                 const AlphaSpec& spec, const char* context) {
  auto it = oc.class_index.find(canonical_key(hnn, oc.inner_specs, spec));
  if (it == oc.class_index.end())
    throw ConsistencyError(std::string(context) +
                           ": spec is not in any enumerated class");
  return it->second;
}

}  // namespace

std::vector<AlphaSpec> enumerate_alphas(const HnnData& hnn,
                                        const std::vector<Automorphism>& auts,
                                        Exec exec) {
  const int m = static_cast<int>(auts.size());
  const int n = hnn.H().order();
  std::vector<std::vector<Elt>> valid_a(m);
  auto scan = [&](int i) {
    if (image_of_set(auts[i], hnn.K().elements()) != hnn.K().elements()) return;
    for (Elt a = 0; a < n; ++a)
      if (alpha_spec_valid(hnn, AlphaSpec{auts[i], a})) valid_a[i].push_back(a);
  };
  if (exec == Exec::serial) {
    for (int i = 0; i < m; ++i) scan(i);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < m; ++i) scan(i);
  }
  std::vector<AlphaSpec> specs;
  for (int i = 0; i < m; ++i)
    for (Elt a : valid_a[i]) specs.push_back(AlphaSpec{auts[i], a});
  for (const AlphaSpec& s : specs) build_alpha(hnn, s);
  return specs;
}

std::optional<Elt> genmap_inner_witness(const HnnData& hnn, const GenMap& f) {
  const FiniteGroup& H = hnn.H();
  for (Elt g = 0; g < H.order(); ++g) {
    bool match = true;
    for (Elt h = 0; h < H.order() && match; ++h)
      match = f.hmap(h) == H.conj(h, g);
    if (!match) continue;
    Word conj_t = concat(hnn, concat(hnn, h_word(H.inv(g)), t_word(+1)),
                         h_word(g));
    if (words_equal(hnn, f.t_image, conj_t)) return g;
  }
  return std::nullopt;
}

std::optional<Elt> alpha_inner_witness(const HnnData& hnn, const AlphaSpec& spec) {
  return genmap_inner_witness(hnn, alpha_genmap(hnn, spec));
}

bool alpha_is_inner(const HnnData& hnn, const AlphaSpec& spec) {
  return alpha_inner_witness(hnn, spec).has_value();
}

bool genmaps_equivalent(const HnnData& hnn, const GenMap& f, const GenMap& g) {
  const FiniteGroup& H = hnn.H();
  for (Elt w = 0; w < H.order(); ++w) {
    bool match = true;
    for (Elt h = 0; h < H.order() && match; ++h)
      match = f.hmap(h) == H.conj(g.hmap(h), w);
    if (!match) continue;
    Word conj_t = concat(hnn, concat(hnn, h_word(H.inv(w)), g.t_image),
                         h_word(w));
    if (words_equal(hnn, f.t_image, conj_t)) return true;
  }
  return false;
}

BetaSpec alpha_then_beta(const HnnData& hnn, const AlphaSpec& s,
                         const BetaSpec& t) {
  return BetaSpec{compose(s.delta, t.zeta), hnn.H().mul(t.zeta(s.a), t.b)};
}

AlphaSpec beta_then_beta_mod_inner(const HnnData& hnn, const BetaSpec& s,
                                   const BetaSpec& t) {
  const FiniteGroup& H = hnn.H();
  Automorphism delta = compose(compose(s.zeta, t.zeta),
                               conjugation_automorphism(H, t.b));
  return AlphaSpec{std::move(delta), H.mul(H.inv(t.b), t.zeta(s.b))};
}

BetaSpec beta_then_alpha_mod_inner(const HnnData& hnn, const BetaSpec& s,
                                   const AlphaSpec& t) {
  const FiniteGroup& H = hnn.H();
  Automorphism zeta = compose(compose(s.zeta, t.delta),
                              conjugation_automorphism(H, t.a));
  return BetaSpec{std::move(zeta), H.mul(H.inv(t.a), t.delta(s.b))};
}

AlphaSpec beta_unshift(const HnnData& hnn, const BetaSpec& s,
                       const BetaSpec& beta0) {
  const FiniteGroup& H = hnn.H();
  Automorphism z0inv = inverse(beta0.zeta);
  Automorphism delta = compose(s.zeta, z0inv);
  return AlphaSpec{std::move(delta), z0inv(H.mul(s.b, H.inv(beta0.b)))};
}

int class_of_alpha(const HnnData& hnn, const OuterClasses& oc,
                   const AlphaSpec& spec) {
  return locate_class(hnn, oc, spec, "class_of_alpha");
}

int class_of_beta(const HnnData& hnn, const OuterClasses& oc,
                  const BetaSpec& spec) {
  if (!oc.beta0) throw InputError("no beta coset exists for this instance");
  AlphaSpec part = beta_unshift(hnn, spec, *oc.beta0);
  if (!alpha_spec_valid(hnn, part))
    throw ConsistencyError("beta spec did not unshift to a valid alpha spec");
  return oc.alpha_class_count + locate_class(hnn, oc, part, "class_of_beta");
}

OuterClasses outer_classes(const HnnData& hnn, Exec exec) {
  if (hnn.H().order() > config().analysis_order_cap)
    throw CapError("outer-class enumeration capped at base order " +
                   std::to_string(config().analysis_order_cap) +
                   ", instance has " + std::to_string(hnn.H().order()));
  const FiniteGroup& H = hnn.H();
  std::vector<Automorphism> auts = automorphism_group(H);

  OuterClasses oc;
  oc.specs = enumerate_alphas(hnn, auts, exec);
  oc.inner_specs = make_inner_specs(hnn);
  oc.spec_class.resize(oc.specs.size());

  std::vector<AlphaSpec> reps;
  for (size_t i = 0; i < oc.specs.size(); ++i) {
    std::vector<Elt> key = canonical_key(hnn, oc.inner_specs, oc.specs[i]);
    auto [it, inserted] =
        oc.class_index.emplace(std::move(key), static_cast<int>(reps.size()));
    if (inserted) {
      // first encounter in enumeration order is the canonically least member
      if (it->first != spec_key(oc.specs[i]))
        throw ConsistencyError("class representative is not canonically least");
      reps.push_back(oc.specs[i]);
      oc.classes.push_back(OuterClass{oc.specs[i], 0, false});
    }
    oc.spec_class[i] = it->second;
    ++oc.classes[it->second].members_count;
  }
  const int m = static_cast<int>(reps.size());
  oc.alpha_class_count = m;
  for (int c = 0; c < m; ++c)
    oc.classes[c].is_trivial = alpha_is_inner(hnn, reps[c]);
  if (!oc.classes[0].is_trivial)
    throw ConsistencyError("class 0 does not contain the identity");
  for (int c = 1; c < m; ++c)
    if (oc.classes[c].is_trivial)
      throw ConsistencyError("identity class is not unique");

  // materialize Out_H^0
  std::vector<Elt> table0(static_cast<size_t>(m) * m);
  auto fill_row0 = [&](int i) {
    for (int j = 0; j < m; ++j)
      table0[static_cast<size_t>(i) * m + j] =
          locate_class(hnn, oc, compose(hnn, reps[i], reps[j]), "out0 table");
  };
  if (exec == Exec::serial) {
    for (int i = 0; i < m; ++i) fill_row0(i);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < m; ++i) fill_row0(i);
  }
  std::vector<std::string> labels0(m);
  for (int i = 0; i < m; ++i) labels0[i] = "a" + std::to_string(i);
  oc.out0_group = FiniteGroup::from_table(m, table0, Provenance::derived,
                                          std::move(labels0));

  oc.beta0 = beta_search(hnn, auts, exec);
  if (!oc.beta0) return oc;

  // beta coset classes: m + i is the class of (alpha rep i) followed by beta0
  std::vector<BetaSpec> beta_reps;
  for (int i = 0; i < m; ++i) {
    BetaSpec br = alpha_then_beta(hnn, reps[i], *oc.beta0);
    if (!beta_spec_valid(hnn, br))
      throw ConsistencyError("beta coset representative is not a valid spec");
    oc.classes.push_back(OuterClass{br, 0, false});
    beta_reps.push_back(std::move(br));
  }

  // distribute every valid beta spec over the coset classes; each witness is
  // verified and the class sizes must mirror the alpha side
  std::vector<int> beta_counts(m, 0);
  for (const Automorphism& zeta : auts)
    for (Elt b = 0; b < H.order(); ++b) {
      BetaSpec cand{zeta, b};
      if (!beta_spec_valid(hnn, cand)) continue;
      verify_beta(hnn, cand);
      ++beta_counts[class_of_beta(hnn, oc, cand) - m];
    }
  for (int i = 0; i < m; ++i) {
    oc.classes[m + i].members_count = beta_counts[i];
    if (beta_counts[i] != oc.classes[i].members_count)
      throw ConsistencyError("beta coset class sizes do not mirror alpha side");
  }

  // full table: alpha classes 0..m-1, beta classes m..2m-1
  const int total = 2 * m;
  std::vector<Elt> table(static_cast<size_t>(total) * total);
  auto at = [&](int i, int j) -> Elt& {
    return table[static_cast<size_t>(i) * total + j];
  };
  // per-j data for the beta-row quadrants: beta0 . alpha_j, normalized
  std::vector<int> shift_class(m), fold_class(m);
  for (int j = 0; j < m; ++j) {
    BetaSpec bj = beta_then_alpha_mod_inner(hnn, *oc.beta0, reps[j]);
    shift_class[j] = class_of_beta(hnn, oc, bj) - m;
    AlphaSpec yj = beta_then_beta_mod_inner(hnn, bj, *oc.beta0);
    if (!alpha_spec_valid(hnn, yj))
      throw ConsistencyError("beta-beta fold left the alpha family");
    fold_class[j] = locate_class(hnn, oc, yj, "outH table");
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Elt ij = table0[static_cast<size_t>(i) * m + j];
      at(i, j) = ij;
      at(i, m + j) = m + ij;
      at(m + i, j) = m + table0[static_cast<size_t>(i) * m + shift_class[j]];
      at(m + i, m + j) = table0[static_cast<size_t>(i) * m + fold_class[j]];
    }
  std::vector<std::string> labels(total);
  for (int i = 0; i < m; ++i) {
    labels[i] = "a" + std::to_string(i);
    labels[m + i] = "b" + std::to_string(i);
  }
  oc.outH_group = FiniteGroup::from_table(total, std::move(table),
                                          Provenance::derived, std::move(labels));
  return oc;
}

CheckLedger cross_check(const HnnData& hnn, const OuterReport& report,
                        const OuterClasses& oc) {
  const FiniteGroup& H = hnn.H();
  CheckLedger ledger;

  ledger.entries.push_back(
      {"chi1-out0-count", true,
       oc.alpha_class_count == report.out0_order,
       "oracle alpha classes = " + std::to_string(oc.alpha_class_count) +
           ", engine out0 = " + std::to_string(report.out0_order)});

  // classes of Out^(V): the representative's delta is inner
  std::set<std::vector<Elt>> inn_images;
  for (const InnerAutomorphism& ia : inner_automorphisms(H))
    inn_images.insert(ia.map.image());
  std::vector<int> outv_classes;
  for (int c = 0; c < oc.alpha_class_count; ++c) {
    const AlphaSpec& rep = std::get<AlphaSpec>(oc.classes[c].rep);
    if (inn_images.count(rep.delta.image())) outv_classes.push_back(c);
  }
  ledger.entries.push_back(
      {"chi1-kernel-outV", true,
       static_cast<long long>(outv_classes.size()) == report.outV_order,
       "classes with inner delta = " + std::to_string(outv_classes.size()) +
           ", engine outV = " + std::to_string(report.outV_order)});

  // chi2 on Out^(V): class of alpha(gamma_b, a) -> coset b Z(H)K
  const Subgroup& ZK = report.bundle.ZK;
  auto coset_rep = [&](Elt b) {
    Elt best = H.order();
    for (Elt z : ZK.elements()) best = std::min(best, H.mul(b, z));
    return best;
  };
  std::unordered_map<std::vector<Elt>, std::vector<Elt>, SpecKeyHash> conj_by;
  for (Elt b = 0; b < H.order(); ++b)
    conj_by[conjugation_automorphism(H, b).image()].push_back(b);

  bool chi2_ok = true;
  std::string chi2_detail;
  std::set<int> outv_set(outv_classes.begin(), outv_classes.end());
  std::map<int, std::set<Elt>> class_cosets;
  std::map<int, bool> class_has_trivial_delta;
  for (size_t i = 0; i < oc.specs.size(); ++i) {
    int c = oc.spec_class[i];
    if (!outv_set.count(c)) continue;
    auto it = conj_by.find(oc.specs[i].delta.image());
    if (it == conj_by.end()) continue;  // member with non-inner delta
    for (Elt b : it->second) class_cosets[c].insert(coset_rep(b));
    if (oc.specs[i].delta.is_identity()) class_has_trivial_delta[c] = true;
  }
  for (int c : outv_classes)
    if (class_cosets[c].size() != 1) {
      chi2_ok = false;
      chi2_detail = "normalizer coset is not well-defined on class " +
                    std::to_string(c);
    }
  std::set<Elt> covered;
  for (int c : outv_classes)
    if (!class_cosets[c].empty()) covered.insert(*class_cosets[c].begin());
  long long coset_count =
      report.bundle.NK.size() / ZK.size();
  if (chi2_ok && static_cast<long long>(covered.size()) != coset_count) {
    chi2_ok = false;
    chi2_detail = "image covers " + std::to_string(covered.size()) +
                  " cosets, expected " + std::to_string(coset_count);
  }
  std::set<int> kernel_classes, trivial_delta_classes;
  for (int c : outv_classes) {
    if (!class_cosets[c].empty() && *class_cosets[c].begin() == 0)
      kernel_classes.insert(c);
    if (class_has_trivial_delta.count(c)) trivial_delta_classes.insert(c);
  }
  long long ck_size = report.bundle.CK.size() / report.bundle.L.size();
  if (chi2_ok && static_cast<long long>(kernel_classes.size()) != ck_size) {
    chi2_ok = false;
    chi2_detail = "kernel has " + std::to_string(kernel_classes.size()) +
                  " classes, expected |C_H(K)|/|L| = " + std::to_string(ck_size);
  }
  if (chi2_ok && kernel_classes != trivial_delta_classes) {
    chi2_ok = false;
    chi2_detail = "kernel classes are not exactly those with a (1,a) member";
  }
  if (chi2_ok)
    chi2_detail = "kernel C_K realized by " +
                  std::to_string(kernel_classes.size()) +
                  " classes, image covers " + std::to_string(covered.size()) +
                  " cosets";
  ledger.entries.push_back({"chi2-kernel-CK", true, chi2_ok, chi2_detail});

  ledger.entries.push_back(
      {"outH-total", true,
       static_cast<long long>(oc.total_class_count()) == report.outH_order,
       "oracle total classes = " + std::to_string(oc.total_class_count()) +
           ", engine outH = " + std::to_string(report.outH_order)});
  return ledger;
}

}  // namespace outerlab
