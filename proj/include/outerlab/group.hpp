#ifndef OUTERLAB_GROUP_HPP
#define OUTERLAB_GROUP_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace outerlab {

/// Element of a finite group, identified by its index in the Cayley table.
/// Index 0 is always the identity.
using Elt = int;

enum class Provenance { cayley, perm, preset, derived };

/// A finite group given by an explicit Cayley table. Immutable after
/// construction; copies share the underlying table.
///
/// Construction validates the table: identity at index 0, Latin-square rows
/// and columns, associativity for all triples, and two-sided inverses.
class FiniteGroup {
public:
  /// table[i*n + j] is the index of the product i*j (left factor first).
  static FiniteGroup from_table(int n, std::vector<Elt> table,
                                Provenance prov = Provenance::cayley,
                                std::vector<std::string> labels = {});
  static FiniteGroup from_rows(const std::vector<std::vector<Elt>>& rows,
                               Provenance prov = Provenance::cayley,
                               std::vector<std::string> labels = {});

  int order() const { return impl_->n; }
  Elt mul(Elt a, Elt b) const { return impl_->table[a * impl_->n + b]; }
  Elt mul(Elt a, Elt b, Elt c) const { return mul(mul(a, b), c); }
  Elt inv(Elt a) const { return impl_->inverse[a]; }
  /// g^{-1} h g
  Elt conj(Elt h, Elt g) const { return mul(mul(inv(g), h), g); }
  Elt power(Elt a, int e) const;
  int element_order(Elt a) const;
  /// Sorted multiset of element orders.
  std::vector<int> order_census() const;
  const std::string& label(Elt a) const { return impl_->labels[a]; }
  Provenance provenance() const { return impl_->prov; }

  /// Identity of the underlying table object (not isomorphism).
  bool same(const FiniteGroup& other) const { return impl_ == other.impl_; }

private:
  struct Impl {
    int n = 0;
    std::vector<Elt> table;
    std::vector<Elt> inverse;
    std::vector<std::string> labels;
    Provenance prov = Provenance::cayley;
  };
  std::shared_ptr<const Impl> impl_;
};

/// A subset of a parent group closed under product and inverse, kept sorted.
class Subgroup {
public:
  Subgroup(FiniteGroup parent, std::vector<Elt> elements);

  const FiniteGroup& parent() const { return parent_; }
  const std::vector<Elt>& elements() const { return elems_; }
  int size() const { return static_cast<int>(elems_.size()); }
  bool contains(Elt a) const { return mask_[a] != 0; }
  bool operator==(const Subgroup& o) const { return elems_ == o.elems_; }

private:
  FiniteGroup parent_;
  std::vector<Elt> elems_;
  std::vector<char> mask_;
};

class Automorphism;

namespace detail {
/// Wraps an image vector without the O(n^2) homomorphism revalidation.
/// Only for maps that are automorphisms by construction (composites,
/// inverses, conjugations of validated maps).
Automorphism trusted_automorphism(FiniteGroup group, std::vector<Elt> image);
}

/// A bijective self-map of a group compatible with its product, stored as a
/// full image vector.
class Automorphism {
public:
  Automorphism(FiniteGroup group, std::vector<Elt> image);

  const FiniteGroup& group() const { return group_; }
  Elt operator()(Elt a) const { return image_[a]; }
  const std::vector<Elt>& image() const { return image_; }
  bool is_identity() const;
  bool operator==(const Automorphism& o) const { return image_ == o.image_; }
  bool operator<(const Automorphism& o) const { return image_ < o.image_; }

private:
  struct Trusted {};
  Automorphism(Trusted, FiniteGroup group, std::vector<Elt> image)
      : group_(std::move(group)), image_(std::move(image)) {}
  friend Automorphism detail::trusted_automorphism(FiniteGroup, std::vector<Elt>);

  FiniteGroup group_;
  std::vector<Elt> image_;
};

// --- construction -----------------------------------------------------------

/// Permutation on points 0..degree-1 in one-line notation.
using Perm = std::vector<int>;

struct GroupSource {
  enum class Kind { cayley, perm, preset } kind = Kind::preset;
  // cayley
  std::vector<std::vector<Elt>> rows;
  // perm
  int degree = 0;
  std::vector<Perm> generators;
  // preset, e.g. "symmetric 3", "cyclic 2 x cyclic 4"
  std::string preset;
};

/// Builds and validates a group from a descriptor. Permutation input is
/// closed under products; elements are then sorted by one-line notation so
/// the identity lands at index 0.
FiniteGroup build_group(const GroupSource& source);

/// Named presets: "cyclic n", "dihedral n", "symmetric n", "alternating n",
/// "quaternion8", and " x "-separated direct products of these.
FiniteGroup preset_group(const std::string& spec);

FiniteGroup cyclic_group(int n);
FiniteGroup dihedral_group(int n);
FiniteGroup symmetric_group(int n);
FiniteGroup alternating_group(int n);
FiniteGroup quaternion_group();
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
FiniteGroup perm_group(int degree, const std::vector<Perm>& generators);

// --- subgroup operations ----------------------------------------------------

/// Smallest subgroup containing the seeds. Empty seeds give the trivial
/// subgroup.
Subgroup subgroup_generated(const FiniteGroup& G, const std::vector<Elt>& seeds);

Subgroup trivial_subgroup(const FiniteGroup& G);
Subgroup full_subgroup(const FiniteGroup& G);

Subgroup center(const FiniteGroup& G);
Subgroup centralizer(const FiniteGroup& G, const std::vector<Elt>& S);
Subgroup normalizer(const FiniteGroup& G, const Subgroup& S);

Subgroup intersect(const Subgroup& A, const Subgroup& B);
/// Set product AB; raises ConsistencyError if the result is not a subgroup.
Subgroup subgroup_product(const Subgroup& A, const Subgroup& B);
/// g^{-1} S g as a sorted element set.
std::vector<Elt> conjugate_set(const FiniteGroup& G, const std::vector<Elt>& S, Elt g);
bool is_subgroup_set(const FiniteGroup& G, const std::vector<Elt>& sorted_elems);
bool is_normal_in(const Subgroup& N, const Subgroup& ambient);

/// Minimal-index representatives of the left cosets g*S, one per element:
/// result[g] = min(g*S).
std::vector<Elt> left_coset_reps(const FiniteGroup& G, const Subgroup& S);

struct Quotient {
  FiniteGroup group;
  std::vector<Elt> projection; ///< element of G -> coset index
  std::vector<Elt> reps;       ///< coset index -> minimal-index representative
};

/// Coset group of a normal subgroup, with minimal-index coset
/// representatives. Raises InputError naming a violating conjugator if N is
/// not normal.
Quotient quotient_group(const FiniteGroup& G, const Subgroup& N);

/// All subgroups of G (including trivial and full), deterministic order.
std::vector<Subgroup> all_subgroups(const FiniteGroup& G);
/// One representative per conjugacy class of subgroups; the representative
/// has the lexicographically least element vector in its class.
std::vector<Subgroup> subgroup_conjugacy_classes(const FiniteGroup& G);

// --- automorphisms ----------------------------------------------------------

/// Full automorphism group, sorted by image vector. Backtracks over images
/// of a greedily chosen minimal generating set, completing each candidate to
/// a full image vector and validating it. Raises CapError above the
/// configured group order cap.
std::vector<Automorphism> automorphism_group(const FiniteGroup& G);

/// Independent route: exhaustive backtracking over all positions with
/// partial-product pruning. Self-test companion for automorphism_group;
/// intended for orders <= 12.
std::vector<Automorphism> automorphism_group_exhaustive(const FiniteGroup& G);

struct InnerAutomorphism {
  Automorphism map;
  Elt witness; ///< least g with map = conjugation by g
};

/// {gamma_g : g in G} with duplicates merged, sorted by image vector.
/// gamma_g(h) = g^{-1} h g.
std::vector<InnerAutomorphism> inner_automorphisms(const FiniteGroup& G);

Automorphism identity_automorphism(const FiniteGroup& G);
Automorphism conjugation_automorphism(const FiniteGroup& G, Elt g);

/// compose(f, g) applies f first, then g: x -> g(f(x)). This left-to-right
/// convention is used for every composite in the library.
Automorphism compose(const Automorphism& f, const Automorphism& g);
Automorphism inverse(const Automorphism& f);
/// f applied elementwise to a sorted set.
std::vector<Elt> image_of_set(const Automorphism& f, const std::vector<Elt>& S);

/// {x : f(x) = x}; always a subgroup.
Subgroup fixed_subgroup(const Automorphism& f);

} // namespace outerlab

#endif
