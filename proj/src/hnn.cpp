#include "outerlab/hnn.hpp"

#include <sstream>

#include "outerlab/errors.hpp"

namespace outerlab {

Word h_word(Elt h) {
  Word w;
  w.head = h;
  return w;
}

Word t_word(int exp) {
  Word w;
  w.tail.push_back({exp, 0});
  return w;
}

Elt HnnData::phi_pow(Elt x, int e) const {
  const Automorphism& f = e >= 0 ? phi_ : phi_inv_;
  int reps = e >= 0 ? e : -e;
  for (int i = 0; i < reps; ++i) x = f(x);
  return x;
}

HnnData validate_hnn(const FiniteGroup& H, const Subgroup& K,
                     const Automorphism& phi) {
  if (!K.parent().same(H))
    throw InputError("subgroup does not belong to the given base group");
  if (!phi.group().same(H))
    throw InputError("automorphism does not act on the given base group");
  if (K.size() == H.order())
    throw InputError("mapping-torus excluded: K must be a proper subgroup of H");
  Subgroup phiK(H, image_of_set(phi, K.elements()));
  if (phiK.size() != K.size())
    throw ConsistencyError("phi(K) has wrong order");
  std::vector<Elt> repK = left_coset_reps(H, K);
  std::vector<Elt> repPhiK = left_coset_reps(H, phiK);
  return HnnData(H, K, std::move(phiK), phi, inverse(phi), std::move(repK),
                 std::move(repPhiK));
}

Word concat(const HnnData& hnn, const Word& a, const Word& b) {
  const FiniteGroup& H = hnn.H();
  Word out = a;
  if (out.tail.empty()) {
    out.head = H.mul(out.head, b.head);
  } else {
    out.tail.back().h = H.mul(out.tail.back().h, b.head);
  }
  out.tail.insert(out.tail.end(), b.tail.begin(), b.tail.end());
  return out;
}

Word invert(const HnnData& hnn, const Word& w) {
  const FiniteGroup& H = hnn.H();
  Word out;
  if (w.tail.empty()) {
    out.head = H.inv(w.head);
    return out;
  }
  out.head = H.inv(w.tail.back().h);
  for (size_t i = w.tail.size(); i-- > 0;) {
    Elt prev = (i == 0) ? w.head : w.tail[i - 1].h;
    out.tail.push_back({-w.tail[i].exp, H.inv(prev)});
  }
  return out;
}

Word britton_reduce(const HnnData& hnn, const Word& w) {
  const FiniteGroup& H = hnn.H();
  Word out;
  out.head = w.head;
  for (const Word::Letter& letter : w.tail) {
    int exp = letter.exp;
    Elt h = letter.h;
    bool absorbed = false;
    if (!out.tail.empty() && out.tail.back().exp == -exp) {
      const Word::Letter& top = out.tail.back();
      // t k t^-1 -> phi(k) for k in K; t^-1 k' t -> phi^-1(k') for k' in phi(K)
      if (top.exp == +1 ? hnn.K().contains(top.h) : hnn.phiK().contains(top.h)) {
        Elt mapped = top.exp == +1 ? hnn.phi()(top.h) : hnn.phi_inv()(top.h);
        Elt merged = H.mul(mapped, h);
        out.tail.pop_back();
        if (out.tail.empty())
          out.head = H.mul(out.head, merged);
        else
          out.tail.back().h = H.mul(out.tail.back().h, merged);
        absorbed = true;
      }
    }
    if (!absorbed) out.tail.push_back({exp, h});
  }
  return out;
}

bool is_t_reduced(const HnnData& hnn, const Word& w) {
  for (size_t i = 0; i + 1 < w.tail.size(); ++i) {
    if (w.tail[i].exp == +1 && w.tail[i + 1].exp == -1 &&
        hnn.K().contains(w.tail[i].h))
      return false;
    if (w.tail[i].exp == -1 && w.tail[i + 1].exp == +1 &&
        hnn.phiK().contains(w.tail[i].h))
      return false;
  }
  return true;
}

bool words_equal(const HnnData& hnn, const Word& w1, const Word& w2) {
  Word q = britton_reduce(hnn, concat(hnn, w1, invert(hnn, w2)));
  return q.is_identity_word();
}

Word normal_form(const HnnData& hnn, const Word& w) {
  const FiniteGroup& H = hnn.H();
  Word out = britton_reduce(hnn, w);
  for (size_t i = 0; i < out.tail.size(); ++i) {
    Elt prev = (i == 0) ? out.head : out.tail[i - 1].h;
    Elt rep, carried;
    if (out.tail[i].exp == +1) {
      // prev = rep * k' with k' in phi(K); prev t = rep t phi^-1(k')
      rep = hnn.rep_phiK(prev);
      carried = hnn.phi_inv()(H.mul(H.inv(rep), prev));
    } else {
      // prev = rep * k with k in K; prev t^-1 = rep t^-1 phi(k)
      rep = hnn.rep_K(prev);
      carried = hnn.phi()(H.mul(H.inv(rep), prev));
    }
    if (i == 0)
      out.head = rep;
    else
      out.tail[i - 1].h = rep;
    out.tail[i].h = H.mul(carried, out.tail[i].h);
  }
  return out;
}

GenMap identity_genmap(const HnnData& hnn) {
  return GenMap{identity_automorphism(hnn.H()), t_word()};
}

Word apply_genmap(const HnnData& hnn, const GenMap& f, const Word& w) {
  Word t_inv = invert(hnn, f.t_image);
  Word out = h_word(f.hmap(w.head));
  for (const Word::Letter& letter : w.tail) {
    out = concat(hnn, out, letter.exp == +1 ? f.t_image : t_inv);
    out = concat(hnn, out, h_word(f.hmap(letter.h)));
  }
  return britton_reduce(hnn, out);
}

GenMap compose(const HnnData& hnn, const GenMap& f, const GenMap& g) {
  return GenMap{compose(f.hmap, g.hmap), apply_genmap(hnn, g, f.t_image)};
}

bool genmaps_equal(const HnnData& hnn, const GenMap& f, const GenMap& g) {
  if (!(f.hmap == g.hmap)) return false;
  return words_equal(hnn, f.t_image, g.t_image);
}

ConjugationProfile conjugation_profile(const HnnData& hnn, const Word& g) {
  const FiniteGroup& H = hnn.H();
  Word r = britton_reduce(hnn, g);
  int i = 0;
  Elt a = r.head;
  for (const Word::Letter& letter : r.tail) {
    i -= letter.exp;
    a = H.mul(hnn.phi_pow(a, -letter.exp), letter.h);
  }
  return {i, a};
}

Word parse_word(const HnnData& hnn, const std::string& text) {
  std::istringstream in(text);
  std::string token;
  Word out;
  while (in >> token) {
    if (token == "t") {
      out = concat(hnn, out, t_word(+1));
    } else if (token == "T") {
      out = concat(hnn, out, t_word(-1));
    } else if (token.size() > 1 && token[0] == 'h') {
      int idx;
      try {
        size_t used;
        idx = std::stoi(token.substr(1), &used);
        if (used + 1 != token.size()) throw InputError("");
      } catch (...) {
        throw InputError("bad word token '" + token + "'");
      }
      if (idx < 0 || idx >= hnn.H().order())
        throw InputError("word token '" + token + "' is out of range for |H| = " +
                         std::to_string(hnn.H().order()));
      out = concat(hnn, out, h_word(idx));
    } else {
      throw InputError("bad word token '" + token + "'");
    }
  }
  return out;
}

std::string format_word(const Word& w) {
  std::string out;
  if (w.head != 0) out = "h" + std::to_string(w.head);
  for (const Word::Letter& letter : w.tail) {
    if (!out.empty()) out += ' ';
    out += letter.exp == +1 ? 't' : 'T';
    if (letter.h != 0) out += " h" + std::to_string(letter.h);
  }
  return out;
}

} // namespace outerlab
