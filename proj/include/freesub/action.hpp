#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "freesub/cayley.hpp"
#include "freesub/errors.hpp"
#include "freesub/fingrp.hpp"
#include "freesub/perm.hpp"
#include "freesub/words.hpp"

namespace freesub {

enum class ProblemKind { free_group, free_product };

/// Resource caps for coset-space construction.  Defaults keep every run at
/// desk scale; all overridable from the CLI.
struct Caps {
  std::size_t max_group_order = 100000;  // |Q|
  int max_index = 4096;                  // |Sigma|
  int max_factor_order = 256;            // |G_alpha|, also hom-enumeration cap
};

/**
 * A problem instance: the group G (free on named generators, or a free
 * product of finite factors), a homomorphism phi onto Q given by generator
 * images, and a subgroup S <= Q.  The subgroup under study is H = phi^-1(S).
 */
struct Problem {
  ProblemKind kind = ProblemKind::free_group;
  int degree = 0;

  // free_group fields
  std::vector<std::string> generators;
  std::vector<Permutation> images;  // indexed by generator

  // free_product fields
  std::vector<CayleyGroup> factors;
  std::vector<std::vector<Permutation>> factor_images;  // [factor][element]

  std::vector<Permutation> subgroup;  // generators of S; empty = trivial
};

/**
 * The coset space Sigma = H\G realized as right cosets S\Q, with the right
 * action of G by coset permutations.  Coset 0 is H itself; cosets are
 * ordered by lexicographically least member of the corresponding S-coset.
 */
struct CosetSpace {
  Problem problem;
  PermGroup Q;
  SubgroupData S;
  CosetTable cosets;
  int size = 0;  // n = |Sigma|

  // Action tables: one permutation of Sigma per generator or factor element.
  std::vector<Permutation> gen_action;                  // free_group
  std::vector<std::vector<Permutation>> factor_action;  // free_product

  bool is_free_group() const { return problem.kind == ProblemKind::free_group; }
};

/// Core test: a word is in the core of H iff rho(w) is trivial on Sigma.
struct CoreTest {
  const CosetSpace* cs = nullptr;
};

namespace detail {
inline Permutation coset_action_of(const PermGroup& Q, const CosetTable& t,
                                   const Permutation& image) {
  int q = Q.index_of(image);
  std::vector<int> act(t.num_cosets);
  for (int c = 0; c < t.num_cosets; ++c)
    act[c] = t.coset_of[Q.mul(t.rep[c], q)];
  return Permutation(std::move(act));
}
}  // namespace detail

inline CosetSpace build_coset_space(const Problem& p, const Caps& caps = {}) {
  std::vector<Permutation> all_images;
  if (p.kind == ProblemKind::free_group) {
    all_images = p.images;
  } else {
    for (std::size_t a = 0; a < p.factors.size(); ++a) {
      if (p.factors[a].order() > caps.max_factor_order)
        throw CapExceeded("factor order exceeds cap " +
                          std::to_string(caps.max_factor_order));
      validate_factor_hom(p.factors[a], p.factor_images[a]);
      for (const Permutation& im : p.factor_images[a]) all_images.push_back(im);
    }
  }

  CosetSpace cs;
  cs.problem = p;
  cs.Q = closure(p.degree, all_images, caps.max_group_order);
  std::vector<int> sgen_indices;
  for (const Permutation& g : p.subgroup) {
    if (!cs.Q.contains(g))
      throw NotASubgroup("subgroup generator " + to_string(g) +
                         " lies outside the image group");
    sgen_indices.push_back(cs.Q.index_of(g));
  }
  PermGroup sc = closure(p.degree, p.subgroup, caps.max_group_order);
  std::vector<int> s_elems;
  for (const Permutation& e : sc.elements()) s_elems.push_back(cs.Q.index_of(e));
  cs.S = subgroup_from(cs.Q, s_elems);
  cs.cosets = right_cosets(cs.Q, cs.S);
  cs.size = cs.cosets.num_cosets;
  if (cs.size > caps.max_index)
    throw CapExceeded("index exceeds cap " + std::to_string(caps.max_index));

  if (p.kind == ProblemKind::free_group) {
    for (const Permutation& im : p.images)
      cs.gen_action.push_back(detail::coset_action_of(cs.Q, cs.cosets, im));
  } else {
    for (const auto& ims : p.factor_images) {
      std::vector<Permutation> acts;
      for (const Permutation& im : ims)
        acts.push_back(detail::coset_action_of(cs.Q, cs.cosets, im));
      cs.factor_action.push_back(std::move(acts));
    }
  }
  return cs;
}

inline Permutation rho_of_word(const CosetSpace& cs, const FreeWord& w) {
  if (!cs.is_free_group()) throw WrongKind("free word on a free_product problem");
  Permutation acc = Permutation::identity(cs.size);
  for (const Letter& l : w.letters) {
    if (l.gen < 0 || static_cast<std::size_t>(l.gen) >= cs.gen_action.size())
      throw UnknownGenerator("generator index " + std::to_string(l.gen) +
                             " out of range");
    const Permutation& a = cs.gen_action[l.gen];
    acc = compose(acc, l.sign > 0 ? a : a.inverse());
  }
  return acc;
}

inline Permutation rho_of_word(const CosetSpace& cs, const ProductWord& w) {
  if (cs.is_free_group()) throw WrongKind("product word on a free_group problem");
  Permutation acc = Permutation::identity(cs.size);
  for (const FactorElement& s : w.syllables) {
    if (s.factor < 0 ||
        static_cast<std::size_t>(s.factor) >= cs.factor_action.size())
      throw FactorIndexError("factor index " + std::to_string(s.factor) +
                             " out of range");
    const auto& acts = cs.factor_action[s.factor];
    if (s.elem < 0 || static_cast<std::size_t>(s.elem) >= acts.size())
      throw FactorIndexError("element index " + std::to_string(s.elem) +
                             " out of range for factor " +
                             std::to_string(s.factor));
    acc = compose(acc, acts[s.elem]);
  }
  return acc;
}

/// Image coset of `c` under a single generator letter or factor element.
inline int act_letter(const CosetSpace& cs, int c, const Letter& l) {
  const Permutation& a = cs.gen_action[l.gen];
  return l.sign > 0 ? a[c] : a.inverse()[c];
}
inline int act_syllable(const CosetSpace& cs, int c, const FactorElement& s) {
  return cs.factor_action[s.factor][s.elem][c];
}

template <class Word>
bool in_subgroup(const CosetSpace& cs, const Word& w) {
  return rho_of_word(cs, w)[0] == 0;
}

template <class Word>
bool in_core(const CoreTest& ct, const Word& w) {
  return rho_of_word(*ct.cs, w).is_identity();
}

}  // namespace freesub
