#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "freesub/cayley.hpp"
#include "freesub/errors.hpp"
#include "freesub/perm.hpp"
#include "freesub/words.hpp"

namespace freesub {

/**
 * A finite permutation group stored by full element enumeration.
 *
 * Elements are listed in BFS layer order from the identity, ties within a
 * layer broken by lexicographic one-line notation.  This order is stable
 * across runs and is the element-index space used everywhere else.
 */
class PermGroup {
 public:
  PermGroup() = default;
  PermGroup(int degree, std::vector<Permutation> elements,
            std::vector<Permutation> generators)
      : degree_(degree),
        elements_(std::move(elements)),
        generators_(std::move(generators)) {
    for (std::size_t i = 0; i < elements_.size(); ++i)
      index_[elements_[i]] = static_cast<int>(i);
  }

  int degree() const { return degree_; }
  int order() const { return static_cast<int>(elements_.size()); }
  const std::vector<Permutation>& elements() const { return elements_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const Permutation& element(int i) const { return elements_[i]; }

  bool contains(const Permutation& p) const { return index_.count(p) != 0; }
  int index_of(const Permutation& p) const {
    auto it = index_.find(p);
    if (it == index_.end())
      throw DomainMismatch("permutation " + to_string(p) + " not in group");
    return it->second;
  }

  /// Element-index multiplication via composition, left-to-right.
  int mul(int a, int b) const {
    return index_of(compose(elements_[a], elements_[b]));
  }
  int inv(int a) const { return index_of(elements_[a].inverse()); }

 private:
  int degree_ = 0;
  std::vector<Permutation> elements_;
  std::vector<Permutation> generators_;
  std::map<Permutation, int> index_;
};

/// Breadth-first closure of `gens` inside Sym(degree).  Deterministic: layer
/// order, ties by lexicographic one-line notation.
inline PermGroup closure(int degree, std::vector<Permutation> gens,
                         std::size_t cap) {
  for (const Permutation& g : gens)
    if (g.degree() != degree)
      throw DomainMismatch("generator degree " + std::to_string(g.degree()) +
                           " does not match " + std::to_string(degree));
  std::map<Permutation, int> seen;
  std::vector<Permutation> elements;
  Permutation id = Permutation::identity(degree);
  seen[id] = 0;
  elements.push_back(id);
  std::vector<Permutation> layer{id};
  while (!layer.empty()) {
    std::vector<Permutation> next;
    for (const Permutation& e : layer)
      for (const Permutation& g : gens) {
        Permutation p = compose(e, g);
        if (!seen.count(p)) {
          seen[p] = -1;
          next.push_back(p);
        }
      }
    std::sort(next.begin(), next.end());
    for (Permutation& p : next) {
      if (elements.size() >= cap)
        throw ClosureCapExceeded("group order exceeds cap " + std::to_string(cap));
      seen[p] = static_cast<int>(elements.size());
      elements.push_back(p);
    }
    layer = std::move(next);
  }
  return PermGroup(degree, std::move(elements), std::move(gens));
}

/**
 * A subgroup of a PermGroup, stored as a sorted list of parent element
 * indices.  Construct through subgroup_from, which validates the axioms.
 */
struct SubgroupData {
  const PermGroup* parent = nullptr;
  std::vector<int> elements;  // sorted parent indices, identity included

  bool contains(int parent_index) const {
    return std::binary_search(elements.begin(), elements.end(), parent_index);
  }
  int order() const { return static_cast<int>(elements.size()); }
};

inline SubgroupData subgroup_from(const PermGroup& parent,
                                  std::vector<int> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  SubgroupData s{&parent, std::move(elems)};
  for (int e : s.elements)
    if (e < 0 || e >= parent.order())
      throw NotASubgroup("element index " + std::to_string(e) + " out of range");
  if (!s.contains(parent.index_of(Permutation::identity(parent.degree()))))
    throw NotASubgroup("subset does not contain the identity");
  for (int a : s.elements) {
    if (!s.contains(parent.inv(a)))
      throw NotASubgroup("subset not closed under inverse");
    for (int b : s.elements)
      if (!s.contains(parent.mul(a, b)))
        throw NotASubgroup("subset not closed under product");
  }
  if (parent.order() % s.order() != 0)
    throw NotASubgroup("order does not divide the parent order");
  return s;
}

/**
 * Right-coset partition of Q by S.  Coset 0 is S itself; the remaining
 * cosets are ordered by their lexicographically least member, which is also
 * each coset's canonical representative.
 */
struct CosetTable {
  int num_cosets = 0;
  std::vector<int> coset_of;  // Q element index -> coset index
  std::vector<int> rep;       // coset index -> Q element index of least member
};

inline CosetTable right_cosets(const PermGroup& Q, const SubgroupData& S) {
  if (S.parent != &Q) throw NotASubgroup("subgroup belongs to a different group");
  subgroup_from(Q, S.elements);  // revalidate, throws NotASubgroup
  std::vector<int> coset_of(Q.order(), -1);
  // Least member = least permutation; Q's element order is not lex order, so
  // compare permutations, not indices.
  std::vector<std::pair<Permutation, std::vector<int>>> cosets;
  for (int x = 0; x < Q.order(); ++x) {
    if (coset_of[x] != -1) continue;
    std::vector<int> members;
    Permutation least = Q.element(x);
    for (int s : S.elements) {
      int sx = Q.mul(s, x);
      members.push_back(sx);
      coset_of[sx] = -2;  // claimed, index assigned below
      if (Q.element(sx) < least) least = Q.element(sx);
    }
    cosets.emplace_back(least, std::move(members));
  }
  std::sort(cosets.begin(), cosets.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  // S contains the identity, the globally least permutation, so the sort
  // already places S first.
  CosetTable t;
  t.num_cosets = static_cast<int>(cosets.size());
  t.coset_of.assign(Q.order(), -1);
  for (int c = 0; c < t.num_cosets; ++c) {
    t.rep.push_back(Q.index_of(cosets[c].first));
    for (int m : cosets[c].second) t.coset_of[m] = c;
  }
  return t;
}

/// Points fixed by: { x in G : point·action[x] = point }.  The action is one
/// permutation per CayleyGroup element; the result is a subgroup of G.
inline std::vector<int> stabilizer(const std::vector<Permutation>& action,
                                   int point) {
  std::vector<int> fix;
  for (std::size_t x = 0; x < action.size(); ++x)
    if (action[x][point] == point) fix.push_back(static_cast<int>(x));
  return fix;
}

/// Checks that element-indexed `images` defines a homomorphism from G.
/// Throws NotAHomomorphism naming the first violated pair.
inline void validate_factor_hom(const CayleyGroup& G,
                                const std::vector<Permutation>& images) {
  if (static_cast<int>(images.size()) != G.order())
    throw NotAHomomorphism("expected " + std::to_string(G.order()) +
                           " images, got " + std::to_string(images.size()));
  if (!images[0].is_identity())
    throw NotAHomomorphism("image of the identity is not the identity");
  for (int a = 0; a < G.order(); ++a)
    for (int b = 0; b < G.order(); ++b)
      if (images[G.mul(a, b)] != compose(images[a], images[b]))
        throw NotAHomomorphism("multiplicativity fails at pair (" +
                               std::to_string(a) + "," + std::to_string(b) + ")");
}

/**
 * All homomorphisms G -> K by backtracking over images in element order,
 * candidate images tried in K's element order.  Output is truncated at
 * `limit` maps and listed in lexicographic image-tuple order.
 */
inline std::vector<std::vector<int>> enumerate_homs(const CayleyGroup& G,
                                                    const PermGroup& K,
                                                    std::size_t limit,
                                                    int max_order = 256) {
  if (G.order() > max_order || K.order() > max_order)
    throw CapExceeded("group order exceeds cap " + std::to_string(max_order));
  int n = G.order(), m = K.order();
  // Precomputed K multiplication keeps the inner consistency check cheap.
  std::vector<std::vector<int>> kmul(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) kmul[a][b] = K.mul(a, b);
  std::vector<std::vector<int>> homs;
  std::vector<int> im(n, -1);
  im[0] = 0;
  auto consistent = [&](int last) {
    for (int a = 0; a <= last; ++a) {
      if (im[a] < 0) continue;
      for (int b = 0; b <= last; ++b) {
        if (im[b] < 0) continue;
        int ab = G.mul(a, b);
        if (ab <= last && im[ab] >= 0 && im[ab] != kmul[im[a]][im[b]])
          return false;
      }
    }
    return true;
  };
  auto rec = [&](auto&& self, int next) -> void {
    if (homs.size() >= limit) return;
    if (next == n) {
      homs.push_back(im);
      return;
    }
    for (int c = 0; c < m; ++c) {
      im[next] = c;
      if (consistent(next)) self(self, next + 1);
      if (homs.size() >= limit) break;
    }
    im[next] = -1;
  };
  rec(rec, 1);
  return homs;
}

/// Evaluate a word homomorphism: left-to-right product of generator images
/// along w, with inverse letters contributing inverse permutations.
inline Permutation evaluate_hom_free(const std::vector<Permutation>& images,
                                     const FreeWord& w, int degree) {
  Permutation acc = Permutation::identity(degree);
  for (const Letter& l : w.letters) {
    if (l.gen < 0 || static_cast<std::size_t>(l.gen) >= images.size())
      throw UnknownGenerator("generator index " + std::to_string(l.gen) +
                             " has no image");
    acc = compose(acc, l.sign > 0 ? images[l.gen] : images[l.gen].inverse());
  }
  return acc;
}

/**
 * The induced Cayley structure on a subgroup of G given by element indices.
 * Element 0 of the result is the identity; `to_parent` maps new indices back
 * to G's.  Throws NotASubgroup if the subset is not closed.
 */
struct SubCayley {
  CayleyGroup group;
  std::vector<int> to_parent;  // new element index -> G element index
};

inline SubCayley subgroup_cayley(const CayleyGroup& G, std::vector<int> elems,
                                 const std::string& name) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  if (elems.empty() || elems[0] != 0)
    throw NotASubgroup("subset of " + G.name() + " does not contain the identity");
  std::map<int, int> back;
  for (std::size_t i = 0; i < elems.size(); ++i)
    back[elems[i]] = static_cast<int>(i);
  int k = static_cast<int>(elems.size());
  std::vector<std::vector<int>> table(k, std::vector<int>(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      auto it = back.find(G.mul(elems[a], elems[b]));
      if (it == back.end())
        throw NotASubgroup("subset of " + G.name() + " not closed under product");
      table[a][b] = it->second;
    }
  return SubCayley{CayleyGroup(name, std::move(table)), std::move(elems)};
}

}  // namespace freesub
