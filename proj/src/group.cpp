#include "outerlab/group.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "outerlab/config.hpp"
#include "outerlab/errors.hpp"

namespace outerlab {

namespace kernels {

std::optional<std::array<Elt, 3>> assoc_violation_serial(
    const std::vector<Elt>& table, int n) {
  for (Elt i = 0; i < n; ++i)
    for (Elt j = 0; j < n; ++j) {
      const Elt ij = table[i * n + j];
      for (Elt k = 0; k < n; ++k)
        if (table[ij * n + k] != table[i * n + table[j * n + k]])
          return std::array<Elt, 3>{i, j, k};
    }
  return std::nullopt;
}

std::optional<std::array<Elt, 3>> assoc_violation_parallel(
    const std::vector<Elt>& table, int n) {
  // Reduces to the lexicographically least violation so the result matches
  // the serial scan exactly.
  bool found = false;
  std::array<Elt, 3> best{0, 0, 0};
#pragma omp parallel
  {
    bool lfound = false;
    std::array<Elt, 3> lbest{0, 0, 0};
#pragma omp for schedule(static)
    for (Elt i = 0; i < n; ++i) {
      if (lfound) continue;  // a smaller i in this thread's chunk already hit
      for (Elt j = 0; j < n && !lfound; ++j) {
        const Elt ij = table[i * n + j];
        for (Elt k = 0; k < n; ++k)
          if (table[ij * n + k] != table[i * n + table[j * n + k]]) {
            lfound = true;
            lbest = {i, j, k};
            break;
          }
      }
    }
#pragma omp critical
    if (lfound && (!found || lbest < best)) {
      found = true;
      best = lbest;
    }
  }
  if (found) return best;
  return std::nullopt;
}

}  // namespace kernels

namespace {

std::string elt_list(const std::vector<Elt>& v) {
  std::string s = "{";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "}";
}

}  // namespace

// --- FiniteGroup -------------------------------------------------------------

FiniteGroup FiniteGroup::from_table(int n, std::vector<Elt> table,
                                    Provenance prov,
                                    std::vector<std::string> labels) {
  if (n <= 0) throw InputError("group order must be positive");
  if (static_cast<int>(table.size()) != n * n)
    throw InputError("Cayley table has wrong size");
  for (Elt v : table)
    if (v < 0 || v >= n) throw InputError("Cayley table entry out of range");

  for (Elt j = 0; j < n; ++j)
    if (table[j] != j)
      throw InputError("element 0 is not a left identity at cell (0," +
                       std::to_string(j) + ")");
  for (Elt i = 0; i < n; ++i)
    if (table[i * n] != i)
      throw InputError("element 0 is not a right identity at cell (" +
                       std::to_string(i) + ",0)");

  for (Elt i = 0; i < n; ++i) {
    std::vector<char> row(n, 0), col(n, 0);
    for (Elt j = 0; j < n; ++j) {
      if (row[table[i * n + j]]++)
        throw InputError("table is not a Latin square: repeated value in row " +
                         std::to_string(i) + " at column " + std::to_string(j));
      if (col[table[j * n + i]]++)
        throw InputError("table is not a Latin square: repeated value in column " +
                         std::to_string(i) + " at row " + std::to_string(j));
    }
  }

  auto violation = (n > 64) ? kernels::assoc_violation_parallel(table, n)
                            : kernels::assoc_violation_serial(table, n);
  if (violation) {
    auto [i, j, k] = *violation;
    throw InputError("table is not associative at triple (" + std::to_string(i) +
                     "," + std::to_string(j) + "," + std::to_string(k) + ")");
  }

  std::vector<Elt> inverse(n, -1);
  for (Elt i = 0; i < n; ++i)
    for (Elt j = 0; j < n; ++j)
      if (table[i * n + j] == 0) {
        inverse[i] = j;
        break;
      }
  for (Elt i = 0; i < n; ++i) {
    if (inverse[i] < 0) throw InputError("element without inverse");
    if (table[inverse[i] * n + i] != 0)
      throw InputError("inverse of " + std::to_string(i) + " is one-sided");
  }

  if (labels.empty()) {
    labels.resize(n);
    for (Elt i = 0; i < n; ++i) labels[i] = std::to_string(i);
  }
  if (static_cast<int>(labels.size()) != n)
    throw InputError("label vector has wrong size");

  auto impl = std::make_shared<Impl>();
  impl->n = n;
  impl->table = std::move(table);
  impl->inverse = std::move(inverse);
  impl->labels = std::move(labels);
  impl->prov = prov;
  FiniteGroup g;
  g.impl_ = std::move(impl);
  return g;
}

FiniteGroup FiniteGroup::from_rows(const std::vector<std::vector<Elt>>& rows,
                                   Provenance prov,
                                   std::vector<std::string> labels) {
  const int n = static_cast<int>(rows.size());
  std::vector<Elt> flat;
  flat.reserve(static_cast<size_t>(n) * n);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n)
      throw InputError("Cayley table is not square");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return from_table(n, std::move(flat), prov, std::move(labels));
}

Elt FiniteGroup::power(Elt a, int e) const {
  Elt base = e >= 0 ? a : inv(a);
  int reps = e >= 0 ? e : -e;
  Elt acc = 0;
  for (int i = 0; i < reps; ++i) acc = mul(acc, base);
  return acc;
}

int FiniteGroup::element_order(Elt a) const {
  int ord = 1;
  Elt x = a;
  while (x != 0) {
    x = mul(x, a);
    ++ord;
  }
  return ord;
}

std::vector<int> FiniteGroup::order_census() const {
  std::vector<int> census(order());
  for (Elt i = 0; i < order(); ++i) census[i] = element_order(i);
  std::sort(census.begin(), census.end());
  return census;
}

// --- Subgroup ----------------------------------------------------------------

Subgroup::Subgroup(FiniteGroup parent, std::vector<Elt> elements)
    : parent_(std::move(parent)), elems_(std::move(elements)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  const int n = parent_.order();
  mask_.assign(n, 0);
  for (Elt e : elems_) {
    if (e < 0 || e >= n) throw InputError("subgroup element out of range");
    mask_[e] = 1;
  }
  if (elems_.empty() || elems_[0] != 0)
    throw InputError("subgroup must contain the identity");
  for (Elt a : elems_) {
    if (!mask_[parent_.inv(a)])
      throw InputError("subgroup not closed under inverse at " + std::to_string(a));
    for (Elt b : elems_)
      if (!mask_[parent_.mul(a, b)])
        throw InputError("subgroup not closed under product at (" +
                         std::to_string(a) + "," + std::to_string(b) + ")");
  }
  if (n % static_cast<int>(elems_.size()) != 0)
    throw ConsistencyError("subgroup order does not divide group order");
}

// --- construction ------------------------------------------------------------

namespace {

std::string cycle_label(const Perm& p) {
  std::string out;
  std::vector<char> seen(p.size(), 0);
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += '(';
    size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
      j = static_cast<size_t>(p[j]);
    }
    out += ')';
  }
  return out.empty() ? "e" : out;
}

Perm perm_compose(const Perm& p, const Perm& q) {
  // apply p first, then q
  Perm r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[i] = q[static_cast<size_t>(p[i])];
  return r;
}

bool perm_is_even(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  int transpositions = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    size_t j = i;
    while (!seen[j]) {
      seen[j] = 1;
      ++len;
      j = static_cast<size_t>(p[j]);
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

FiniteGroup group_from_perms(std::vector<Perm> perms, Provenance prov) {
  std::sort(perms.begin(), perms.end());
  perms.erase(std::unique(perms.begin(), perms.end()), perms.end());
  // the identity is lexicographically least among permutations, so it lands
  // at index 0 after sorting
  const int n = static_cast<int>(perms.size());
  std::map<Perm, Elt> index;
  for (Elt i = 0; i < n; ++i) index[perms[i]] = i;
  std::vector<Elt> table(static_cast<size_t>(n) * n);
  for (Elt i = 0; i < n; ++i)
    for (Elt j = 0; j < n; ++j) {
      auto it = index.find(perm_compose(perms[i], perms[j]));
      if (it == index.end())
        throw InputError("permutation set not closed under composition");
      table[i * n + j] = it->second;
    }
  std::vector<std::string> labels(n);
  for (Elt i = 0; i < n; ++i) labels[i] = cycle_label(perms[i]);
  return FiniteGroup::from_table(n, std::move(table), prov, std::move(labels));
}

std::vector<Perm> all_perms(int degree) {
  Perm p(degree);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void check_order_cap(long long order, const std::string& what) {
  if (order > config().group_order_cap)
    throw CapError(what + " of order " + std::to_string(order) +
                   " exceeds the group order cap " +
                   std::to_string(config().group_order_cap));
}

}  // namespace

FiniteGroup cyclic_group(int n) {
  if (n < 1) throw InputError("cyclic group needs n >= 1");
  check_order_cap(n, "cyclic group");
  std::vector<Elt> table(static_cast<size_t>(n) * n);
  for (Elt i = 0; i < n; ++i)
    for (Elt j = 0; j < n; ++j) table[i * n + j] = (i + j) % n;
  return FiniteGroup::from_table(n, std::move(table), Provenance::preset);
}

FiniteGroup dihedral_group(int n) {
  if (n < 1) throw InputError("dihedral group needs n >= 1");
  check_order_cap(2LL * n, "dihedral group");
  // index k < n: rotation r^k; index n+k: reflection s r^k
  const int m = 2 * n;
  auto idx = [n](int flip, int k) { return flip * n + ((k % n + n) % n); };
  std::vector<Elt> table(static_cast<size_t>(m) * m);
  for (int f1 = 0; f1 < 2; ++f1)
    for (int k1 = 0; k1 < n; ++k1)
      for (int f2 = 0; f2 < 2; ++f2)
        for (int k2 = 0; k2 < n; ++k2) {
          // s r^a * s r^b = r^{b-a}; r^a * s r^b = s r^{b-a}; else add
          int k = f2 ? k2 - k1 : k1 + k2;
          table[idx(f1, k1) * m + idx(f2, k2)] = idx(f1 ^ f2, k);
        }
  std::vector<std::string> labels(m);
  for (int k = 0; k < n; ++k) {
    labels[k] = "r" + std::to_string(k);
    labels[n + k] = "s" + std::to_string(k);
  }
  return FiniteGroup::from_table(m, std::move(table), Provenance::preset,
                                 std::move(labels));
}

FiniteGroup symmetric_group(int n) {
  if (n < 1) throw InputError("symmetric group needs n >= 1");
  check_order_cap(factorial(n), "symmetric group");
  return group_from_perms(all_perms(n), Provenance::preset);
}

FiniteGroup alternating_group(int n) {
  if (n < 1) throw InputError("alternating group needs n >= 1");
  check_order_cap(n <= 2 ? 1 : factorial(n) / 2, "alternating group");
  std::vector<Perm> evens;
  for (auto& p : all_perms(n))
    if (perm_is_even(p)) evens.push_back(std::move(p));
  return group_from_perms(std::move(evens), Provenance::preset);
}

FiniteGroup quaternion_group() {
  // index = 2*unit + sign; units 1, i, j, k
  static const int unit_mul[4][4] = {
      {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign_mul[4][4] = {
      {0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<Elt> table(64);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int u1 = a / 2, s1 = a % 2, u2 = b / 2, s2 = b % 2;
      int u = unit_mul[u1][u2];
      int s = s1 ^ s2 ^ sign_mul[u1][u2];
      table[a * 8 + b] = 2 * u + s;
    }
  std::vector<std::string> labels = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  return FiniteGroup::from_table(8, std::move(table), Provenance::preset,
                                 std::move(labels));
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order(), n = na * nb;
  std::vector<Elt> table(static_cast<size_t>(n) * n);
  for (Elt i = 0; i < n; ++i)
    for (Elt j = 0; j < n; ++j) {
      Elt ai = i / nb, bi = i % nb, aj = j / nb, bj = j % nb;
      table[i * n + j] = a.mul(ai, aj) * nb + b.mul(bi, bj);
    }
  std::vector<std::string> labels(n);
  for (Elt i = 0; i < n; ++i)
    labels[i] = "(" + a.label(i / nb) + "," + b.label(i % nb) + ")";
  return FiniteGroup::from_table(n, std::move(table), Provenance::preset,
                                 std::move(labels));
}

FiniteGroup perm_group(int degree, const std::vector<Perm>& generators) {
  if (degree < 1) throw InputError("permutation degree must be positive");
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != degree)
      throw InputError("permutation generator has wrong degree");
    std::vector<char> seen(degree, 0);
    for (int v : g) {
      if (v < 0 || v >= degree || seen[v]++)
        throw InputError("permutation generator is not a bijection");
    }
  }
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::set<Perm> closure{id};
  std::vector<Perm> queue{id};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    for (const auto& g : generators) {
      Perm next = perm_compose(queue[qi], g);
      if (closure.insert(next).second) {
        check_order_cap(static_cast<long long>(closure.size()),
                        "permutation closure");
        queue.push_back(std::move(next));
      }
    }
  }
  return group_from_perms({closure.begin(), closure.end()}, Provenance::perm);
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

FiniteGroup preset_factor(const std::string& term) {
  std::istringstream in(term);
  std::string name;
  in >> name;
  if (name == "quaternion8") return quaternion_group();
  int n = 0;
  if (!(in >> n)) throw InputError("preset '" + term + "' needs a parameter");
  if (name == "cyclic") return cyclic_group(n);
  if (name == "dihedral") return dihedral_group(n);
  if (name == "symmetric") return symmetric_group(n);
  if (name == "alternating") return alternating_group(n);
  throw InputError("unknown preset '" + name + "'");
}

}  // namespace

FiniteGroup preset_group(const std::string& spec) {
  std::vector<std::string> terms;
  size_t pos = 0;
  while (true) {
    size_t x = spec.find(" x ", pos);
    if (x == std::string::npos) {
      terms.push_back(trim(spec.substr(pos)));
      break;
    }
    terms.push_back(trim(spec.substr(pos, x - pos)));
    pos = x + 3;
  }
  if (terms.empty() || terms[0].empty())
    throw InputError("empty preset specification");
  FiniteGroup g = preset_factor(terms[0]);
  for (size_t i = 1; i < terms.size(); ++i) {
    FiniteGroup h = preset_factor(terms[i]);
    check_order_cap(static_cast<long long>(g.order()) * h.order(),
                    "direct product");
    g = direct_product(g, h);
  }
  return g;
}

FiniteGroup build_group(const GroupSource& source) {
  switch (source.kind) {
    case GroupSource::Kind::cayley:
      check_order_cap(static_cast<long long>(source.rows.size()),
                      "explicit Cayley table");
      return FiniteGroup::from_rows(source.rows, Provenance::cayley);
    case GroupSource::Kind::perm:
      return perm_group(source.degree, source.generators);
    case GroupSource::Kind::preset:
      return preset_group(source.preset);
  }
  throw InputError("invalid group source");
}

// --- subgroup operations ------------------------------------------------------

Subgroup subgroup_generated(const FiniteGroup& G, const std::vector<Elt>& seeds) {
  const int n = G.order();
  std::vector<char> in(n, 0);
  std::vector<Elt> members{0};
  in[0] = 1;
  for (Elt s : seeds) {
    if (s < 0 || s >= n) throw InputError("seed element out of range");
    if (!in[s]) {
      in[s] = 1;
      members.push_back(s);
    }
  }
  for (size_t qi = 0; qi < members.size(); ++qi)
    for (Elt s : seeds) {
      Elt next = G.mul(members[qi], s);
      if (!in[next]) {
        in[next] = 1;
        members.push_back(next);
      }
    }
  return Subgroup(G, std::move(members));
}

Subgroup trivial_subgroup(const FiniteGroup& G) { return Subgroup(G, {0}); }

Subgroup full_subgroup(const FiniteGroup& G) {
  std::vector<Elt> all(G.order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(G, std::move(all));
}

Subgroup center(const FiniteGroup& G) {
  std::vector<Elt> out;
  for (Elt g = 0; g < G.order(); ++g) {
    bool central = true;
    for (Elt x = 0; x < G.order() && central; ++x)
      central = G.mul(g, x) == G.mul(x, g);
    if (central) out.push_back(g);
  }
  return Subgroup(G, std::move(out));
}

Subgroup centralizer(const FiniteGroup& G, const std::vector<Elt>& S) {
  std::vector<Elt> out;
  for (Elt g = 0; g < G.order(); ++g) {
    bool commutes = true;
    for (Elt s : S)
      if (G.mul(g, s) != G.mul(s, g)) {
        commutes = false;
        break;
      }
    if (commutes) out.push_back(g);
  }
  return Subgroup(G, std::move(out));
}

Subgroup normalizer(const FiniteGroup& G, const Subgroup& S) {
  std::vector<Elt> out;
  for (Elt g = 0; g < G.order(); ++g) {
    bool normalizes = true;
    for (Elt s : S.elements())
      if (!S.contains(G.conj(s, g))) {
        normalizes = false;
        break;
      }
    if (normalizes) out.push_back(g);
  }
  return Subgroup(G, std::move(out));
}

Subgroup intersect(const Subgroup& A, const Subgroup& B) {
  std::vector<Elt> out;
  for (Elt a : A.elements())
    if (B.contains(a)) out.push_back(a);
  return Subgroup(A.parent(), std::move(out));
}

Subgroup subgroup_product(const Subgroup& A, const Subgroup& B) {
  const FiniteGroup& G = A.parent();
  std::set<Elt> prod;
  for (Elt a : A.elements())
    for (Elt b : B.elements()) prod.insert(G.mul(a, b));
  std::vector<Elt> elems(prod.begin(), prod.end());
  if (!is_subgroup_set(G, elems))
    throw ConsistencyError("set product " + elt_list(A.elements()) + "*" +
                           elt_list(B.elements()) + " is not a subgroup");
  return Subgroup(G, std::move(elems));
}

std::vector<Elt> conjugate_set(const FiniteGroup& G, const std::vector<Elt>& S,
                               Elt g) {
  std::vector<Elt> out;
  out.reserve(S.size());
  for (Elt s : S) out.push_back(G.conj(s, g));
  std::sort(out.begin(), out.end());
  return out;
}

bool is_subgroup_set(const FiniteGroup& G, const std::vector<Elt>& sorted_elems) {
  if (sorted_elems.empty() || sorted_elems[0] != 0) return false;
  std::vector<char> mask(G.order(), 0);
  for (Elt e : sorted_elems) mask[e] = 1;
  for (Elt a : sorted_elems)
    for (Elt b : sorted_elems)
      if (!mask[G.mul(a, b)]) return false;
  return true;
}

bool is_normal_in(const Subgroup& N, const Subgroup& ambient) {
  const FiniteGroup& G = N.parent();
  for (Elt g : ambient.elements())
    for (Elt x : N.elements())
      if (!N.contains(G.conj(x, g))) return false;
  return true;
}

std::vector<Elt> left_coset_reps(const FiniteGroup& G, const Subgroup& S) {
  std::vector<Elt> rep(G.order());
  for (Elt g = 0; g < G.order(); ++g) {
    Elt best = G.order();
    for (Elt s : S.elements()) best = std::min(best, G.mul(g, s));
    rep[g] = best;
  }
  return rep;
}

Quotient quotient_group(const FiniteGroup& G, const Subgroup& N) {
  for (Elt g = 0; g < G.order(); ++g)
    for (Elt x : N.elements())
      if (!N.contains(G.conj(x, g)))
        throw InputError("subgroup is not normal: conjugation by " +
                         std::to_string(g) + " moves " + std::to_string(x) +
                         " outside");
  std::vector<Elt> rep = left_coset_reps(G, N);
  std::vector<Elt> reps;
  std::vector<Elt> coset_index(G.order(), -1);
  for (Elt g = 0; g < G.order(); ++g)
    if (rep[g] == g) {
      coset_index[g] = static_cast<Elt>(reps.size());
      reps.push_back(g);
    }
  const int m = static_cast<int>(reps.size());
  std::vector<Elt> projection(G.order());
  for (Elt g = 0; g < G.order(); ++g) projection[g] = coset_index[rep[g]];
  std::vector<Elt> table(static_cast<size_t>(m) * m);
  for (Elt i = 0; i < m; ++i)
    for (Elt j = 0; j < m; ++j)
      table[i * m + j] = projection[G.mul(reps[i], reps[j])];
  std::vector<std::string> labels(m);
  for (Elt i = 0; i < m; ++i) labels[i] = "[" + G.label(reps[i]) + "]";
  Quotient q{FiniteGroup::from_table(m, std::move(table), Provenance::derived,
                                     std::move(labels)),
             std::move(projection), std::move(reps)};
  return q;
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& G) {
  std::vector<Subgroup> list{trivial_subgroup(G)};
  std::set<std::vector<Elt>> seen{list[0].elements()};
  for (size_t i = 0; i < list.size(); ++i) {
    std::vector<Elt> base = list[i].elements();
    for (Elt g = 0; g < G.order(); ++g) {
      if (list[i].contains(g)) continue;
      std::vector<Elt> seeds = base;
      seeds.push_back(g);
      Subgroup ext = subgroup_generated(G, seeds);
      if (seen.insert(ext.elements()).second) list.push_back(std::move(ext));
    }
  }
  std::sort(list.begin(), list.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements() < b.elements();
  });
  return list;
}

std::vector<Subgroup> subgroup_conjugacy_classes(const FiniteGroup& G) {
  std::vector<Subgroup> out;
  std::set<std::vector<Elt>> seen;
  for (const Subgroup& S : all_subgroups(G)) {
    std::vector<Elt> canonical = S.elements();
    for (Elt g = 0; g < G.order(); ++g)
      canonical = std::min(canonical, conjugate_set(G, S.elements(), g));
    if (seen.insert(canonical).second) out.emplace_back(G, std::move(canonical));
  }
  return out;
}

// --- automorphisms -------------------------------------------------------------

Automorphism::Automorphism(FiniteGroup group, std::vector<Elt> image)
    : group_(std::move(group)), image_(std::move(image)) {
  const int n = group_.order();
  if (static_cast<int>(image_.size()) != n)
    throw InputError("automorphism image vector has wrong size");
  std::vector<char> seen(n, 0);
  for (Elt v : image_) {
    if (v < 0 || v >= n || seen[v]++)
      throw InputError("automorphism image is not a bijection");
  }
  if (image_[0] != 0) throw InputError("automorphism must fix the identity");
  for (Elt i = 0; i < n; ++i)
    for (Elt j = 0; j < n; ++j)
      if (image_[group_.mul(i, j)] != group_.mul(image_[i], image_[j]))
        throw InputError("map is not a homomorphism at (" + std::to_string(i) +
                         "," + std::to_string(j) + ")");
}

bool Automorphism::is_identity() const {
  for (Elt i = 0; i < group_.order(); ++i)
    if (image_[i] != i) return false;
  return true;
}

namespace detail {

Automorphism trusted_automorphism(FiniteGroup group, std::vector<Elt> image) {
  return Automorphism(Automorphism::Trusted{}, std::move(group), std::move(image));
}

}  // namespace detail

Automorphism identity_automorphism(const FiniteGroup& G) {
  std::vector<Elt> img(G.order());
  std::iota(img.begin(), img.end(), 0);
  return detail::trusted_automorphism(G, std::move(img));
}

Automorphism conjugation_automorphism(const FiniteGroup& G, Elt g) {
  std::vector<Elt> img(G.order());
  for (Elt h = 0; h < G.order(); ++h) img[h] = G.conj(h, g);
  return detail::trusted_automorphism(G, std::move(img));
}

Automorphism compose(const Automorphism& f, const Automorphism& g) {
  if (!f.group().same(g.group()))
    throw InputError("cannot compose automorphisms of different groups");
  std::vector<Elt> img(f.group().order());
  for (Elt i = 0; i < f.group().order(); ++i) img[i] = g(f(i));
  return detail::trusted_automorphism(f.group(), std::move(img));
}

Automorphism inverse(const Automorphism& f) {
  std::vector<Elt> img(f.group().order());
  for (Elt i = 0; i < f.group().order(); ++i) img[f(i)] = i;
  return detail::trusted_automorphism(f.group(), std::move(img));
}

std::vector<Elt> image_of_set(const Automorphism& f, const std::vector<Elt>& S) {
  std::vector<Elt> out;
  out.reserve(S.size());
  for (Elt s : S) out.push_back(f(s));
  std::sort(out.begin(), out.end());
  return out;
}

Subgroup fixed_subgroup(const Automorphism& f) {
  std::vector<Elt> out;
  for (Elt i = 0; i < f.group().order(); ++i)
    if (f(i) == i) out.push_back(i);
  return Subgroup(f.group(), std::move(out));
}

namespace {

std::vector<Elt> greedy_generators(const FiniteGroup& G) {
  std::vector<Elt> gens;
  Subgroup closure = trivial_subgroup(G);
  while (closure.size() < G.order()) {
    for (Elt g = 0; g < G.order(); ++g)
      if (!closure.contains(g)) {
        gens.push_back(g);
        break;
      }
    closure = subgroup_generated(G, gens);
  }
  return gens;
}

// Extends generator images to a full image vector; returns false on conflict
// or when the completed map is not a bijective homomorphism.
bool complete_hom(const FiniteGroup& G, const std::vector<Elt>& gens,
                  const std::vector<Elt>& gen_images, std::vector<Elt>& img) {
  const int n = G.order();
  img.assign(n, -1);
  img[0] = 0;
  std::vector<Elt> queue{0};
  for (size_t qi = 0; qi < queue.size(); ++qi)
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      Elt y = G.mul(queue[qi], gens[gi]);
      Elt iy = G.mul(img[queue[qi]], gen_images[gi]);
      if (img[y] == -1) {
        img[y] = iy;
        queue.push_back(y);
      } else if (img[y] != iy) {
        return false;
      }
    }
  std::vector<char> seen(n, 0);
  for (Elt v : img)
    if (v < 0 || seen[v]++) return false;
  for (Elt i = 0; i < n; ++i)
    for (Elt j = 0; j < n; ++j)
      if (img[G.mul(i, j)] != G.mul(img[i], img[j])) return false;
  return true;
}

}  // namespace

std::vector<Automorphism> automorphism_group(const FiniteGroup& G) {
  if (G.order() > config().group_order_cap)
    throw CapError("automorphism enumeration capped at order " +
                   std::to_string(config().group_order_cap) + ", group has " +
                   std::to_string(G.order()));
  const int n = G.order();
  std::vector<int> elt_order(n);
  for (Elt i = 0; i < n; ++i) elt_order[i] = G.element_order(i);

  std::vector<Elt> gens = greedy_generators(G);
  std::vector<std::vector<Elt>> candidates(gens.size());
  for (size_t gi = 0; gi < gens.size(); ++gi)
    for (Elt v = 0; v < n; ++v)
      if (elt_order[v] == elt_order[gens[gi]]) candidates[gi].push_back(v);

  std::vector<std::vector<Elt>> images;
  std::vector<Elt> pick(gens.size());
  std::vector<Elt> img;
  auto rec = [&](auto&& self, size_t level) -> void {
    if (level == gens.size()) {
      if (complete_hom(G, gens, pick, img)) images.push_back(img);
      return;
    }
    for (Elt cand : candidates[level]) {
      pick[level] = cand;
      self(self, level + 1);
    }
  };
  rec(rec, 0);

  std::sort(images.begin(), images.end());
  std::vector<Automorphism> out;
  out.reserve(images.size());
  for (auto& v : images) out.push_back(detail::trusted_automorphism(G, std::move(v)));
  return out;
}

std::vector<Automorphism> automorphism_group_exhaustive(const FiniteGroup& G) {
  const int n = G.order();
  std::vector<int> elt_order(n);
  for (Elt i = 0; i < n; ++i) elt_order[i] = G.element_order(i);
  std::vector<Elt> img(n, -1);
  std::vector<char> used(n, 0);
  img[0] = 0;
  used[0] = 1;
  std::vector<std::vector<Elt>> images;
  auto rec = [&](auto&& self, Elt pos) -> void {
    if (pos == n) {
      images.push_back(img);
      return;
    }
    for (Elt v = 0; v < n; ++v) {
      if (used[v] || elt_order[v] != elt_order[pos]) continue;
      img[pos] = v;
      bool ok = true;
      for (Elt u = 0; u <= pos && ok; ++u) {
        Elt w = G.mul(u, pos);
        if (w <= pos && G.mul(img[u], v) != img[w]) ok = false;
        if (ok) {
          Elt w2 = G.mul(pos, u);
          if (w2 <= pos && G.mul(v, img[u]) != img[w2]) ok = false;
        }
      }
      if (ok) {
        used[v] = 1;
        self(self, pos + 1);
        used[v] = 0;
      }
    }
    img[pos] = -1;
  };
  rec(rec, 1);
  std::sort(images.begin(), images.end());
  std::vector<Automorphism> out;
  out.reserve(images.size());
  for (auto& v : images) out.emplace_back(G, std::move(v));
  return out;
}

std::vector<InnerAutomorphism> inner_automorphisms(const FiniteGroup& G) {
  std::map<std::vector<Elt>, Elt> by_image;
  for (Elt g = 0; g < G.order(); ++g) {
    std::vector<Elt> img(G.order());
    for (Elt h = 0; h < G.order(); ++h) img[h] = G.conj(h, g);
    by_image.emplace(std::move(img), g);
  }
  std::vector<InnerAutomorphism> out;
  out.reserve(by_image.size());
  for (auto& [img, g] : by_image)
    out.push_back({detail::trusted_automorphism(G, img), g});
  const int expected = G.order() / center(G).size();
  if (static_cast<int>(out.size()) != expected)
    throw ConsistencyError("inner automorphism count " +
                           std::to_string(out.size()) + " != |G|/|Z(G)| = " +
                           std::to_string(expected));
  return out;
}

}  // namespace outerlab
