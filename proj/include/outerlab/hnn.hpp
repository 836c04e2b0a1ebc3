#ifndef OUTERLAB_HNN_HPP
#define OUTERLAB_HNN_HPP

#include <string>
#include <utility>
#include <vector>

#include "outerlab/group.hpp"

namespace outerlab {

/// An element of the HNN-extension G = <H, t ; t k t^-1 = phi(k), k in K>,
/// written as head * t^{e1} h1 * t^{e2} h2 * ... with exponents +-1.
struct Word {
  struct Letter {
    int exp;  ///< +1 for t, -1 for t^-1
    Elt h;    ///< the base-group element following this t-power
    bool operator==(const Letter&) const = default;
  };
  Elt head = 0;
  std::vector<Letter> tail;

  bool operator==(const Word&) const = default;
  bool is_identity_word() const { return head == 0 && tail.empty(); }
  int t_length() const { return static_cast<int>(tail.size()); }
};

Word h_word(Elt h);
Word t_word(int exp = +1);

/// A validated HNN datum (H, K < H proper, phi in Aut(H)) with cached
/// derived data: phi(K) and minimal-index left-coset representatives.
class HnnData {
public:
  const FiniteGroup& H() const { return H_; }
  const Subgroup& K() const { return K_; }
  const Subgroup& phiK() const { return phiK_; }
  const Automorphism& phi() const { return phi_; }
  const Automorphism& phi_inv() const { return phi_inv_; }
  /// Representative of the left coset h*K (minimal index).
  Elt rep_K(Elt h) const { return rep_K_[h]; }
  /// Representative of the left coset h*phi(K) (minimal index).
  Elt rep_phiK(Elt h) const { return rep_phiK_[h]; }
  Elt phi_pow(Elt x, int e) const;

private:
  friend HnnData validate_hnn(const FiniteGroup&, const Subgroup&,
                              const Automorphism&);
  HnnData(FiniteGroup H, Subgroup K, Subgroup phiK, Automorphism phi,
          Automorphism phi_inv, std::vector<Elt> repK, std::vector<Elt> repPhiK)
      : H_(std::move(H)), K_(std::move(K)), phiK_(std::move(phiK)),
        phi_(std::move(phi)), phi_inv_(std::move(phi_inv)),
        rep_K_(std::move(repK)), rep_phiK_(std::move(repPhiK)) {}

  FiniteGroup H_;
  Subgroup K_;
  Subgroup phiK_;
  Automorphism phi_;
  Automorphism phi_inv_;
  std::vector<Elt> rep_K_;
  std::vector<Elt> rep_phiK_;
};

/// Rejects K = H (the mapping-torus case) and mismatched components.
HnnData validate_hnn(const FiniteGroup& H, const Subgroup& K,
                     const Automorphism& phi);

Word concat(const HnnData& hnn, const Word& a, const Word& b);
Word invert(const HnnData& hnn, const Word& w);

/// Rewrites until no pinch t k t^-1 (k in K) or t^-1 k' t (k' in phi(K))
/// remains, merging adjacent base-group letters. The result represents the
/// same element and has minimal t-length.
Word britton_reduce(const HnnData& hnn, const Word& w);

bool is_t_reduced(const HnnData& hnn, const Word& w);

/// True iff the words represent the same element of G; decided by reducing
/// w1 * w2^-1 to the identity.
bool words_equal(const HnnData& hnn, const Word& w1, const Word& w2);

/// Canonical representative. Scans left to right; the base-group letter in
/// front of each t^{+1} is replaced by its phi(K)-coset representative (the
/// K-coset representative in front of each t^{-1}), and the split-off factor
/// is carried across the t-power using the defining relation.
Word normal_form(const HnnData& hnn, const Word& w);

/// An endomorphism of G given on generators: every base-group letter maps
/// through hmap, t maps to t_image (and t^-1 to its inverse).
struct GenMap {
  Automorphism hmap;
  Word t_image;
};

GenMap identity_genmap(const HnnData& hnn);
Word apply_genmap(const HnnData& hnn, const GenMap& f, const Word& w);
/// apply f first, then g.
GenMap compose(const HnnData& hnn, const GenMap& f, const GenMap& g);
/// Equal as maps on generators (hence as endomorphisms).
bool genmaps_equal(const HnnData& hnn, const GenMap& f, const GenMap& g);

/// (i, a) such that whenever g^-1 b g lies in H for b in H, it equals
/// a^-1 phi^i(b) a. Depends only on g.
struct ConjugationProfile {
  int i;
  Elt a;
};

ConjugationProfile conjugation_profile(const HnnData& hnn, const Word& g);

// --- word text syntax ---------------------------------------------------------

/// Tokens separated by whitespace: "h<index>", "t", "T" (t^-1). The empty
/// string is the identity.
Word parse_word(const HnnData& hnn, const std::string& text);
std::string format_word(const Word& w);

} // namespace outerlab

#endif
