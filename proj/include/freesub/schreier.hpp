#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "freesub/action.hpp"
#include "freesub/errors.hpp"
#include "freesub/fingrp.hpp"
#include "freesub/report.hpp"
#include "freesub/rng.hpp"
#include "freesub/sampling.hpp"
#include "freesub/words.hpp"
#include "freesub/wreath.hpp"

namespace freesub {

/// Prefix-closed transversal of H in the free group: reps[i] is the
/// shortlex-least reduced word in coset i; reps[0] is the identity.
struct SchreierTransversal {
  std::vector<FreeWord> reps;
};

/**
 * Shortlex BFS over the coset graph.  Edge order: positive generators in
 * declaration order, then their inverses.  FIFO processing makes each rep
 * the shortlex-least word of minimal length, and every rep extends the rep
 * of an earlier coset by one letter, so the output is prefix-closed.
 */
inline SchreierTransversal build_transversal(const CosetSpace& cs) {
  if (!cs.is_free_group())
    throw WrongKind("schreier transversals require a free_group problem");
  int m = static_cast<int>(cs.problem.generators.size());
  std::vector<Letter> edge_order;
  for (int g = 0; g < m; ++g) edge_order.push_back(Letter{g, +1});
  for (int g = 0; g < m; ++g) edge_order.push_back(Letter{g, -1});

  SchreierTransversal t;
  t.reps.assign(cs.size, FreeWord{});
  std::vector<bool> seen(cs.size, false);
  seen[0] = true;
  std::vector<int> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int c = queue[head];
    for (const Letter& l : edge_order) {
      int d = act_letter(cs, c, l);
      if (!seen[d]) {
        seen[d] = true;
        t.reps[d] = reduce_concat(t.reps[c], FreeWord{{l}});
        queue.push_back(d);
      }
    }
  }
  return t;
}

/**
 * The free basis of H built from a Schreier transversal: the nontrivial
 * words T[t]*x*T[t*rho(x)]^-1 over all (coset t, generator x), each kept
 * with its provenance pair.
 */
struct SchreierBasis {
  struct Entry {
    FreeWord word;
    int coset = 0;  // t
    int gen = 0;    // x
  };
  std::vector<Entry> elements;

  int rank() const { return static_cast<int>(elements.size()); }
};

inline SchreierBasis schreier_basis(const CosetSpace& cs,
                                    const SchreierTransversal& T) {
  SchreierBasis b;
  int m = static_cast<int>(cs.problem.generators.size());
  for (int t = 0; t < cs.size; ++t)
    for (int x = 0; x < m; ++x) {
      int img = act_letter(cs, t, Letter{x, +1});
      FreeWord w = reduce_concat(reduce_concat(T.reps[t], free_letter(x, +1)),
                                 invert_free(T.reps[img]));
      if (!w.is_identity()) b.elements.push_back({std::move(w), t, x});
    }
  return b;
}

/// A reference to a basis element or its inverse.
struct BasisToken {
  int index = 0;  // into SchreierBasis::elements
  int sign = +1;
};

namespace detail {
inline std::map<std::pair<int, int>, int> basis_lookup(const SchreierBasis& B) {
  std::map<std::pair<int, int>, int> at;
  for (std::size_t k = 0; k < B.elements.size(); ++k)
    at[{B.elements[k].coset, B.elements[k].gen}] = static_cast<int>(k);
  return at;
}
}  // namespace detail

/**
 * Rewrites h in H as a word over the basis: walk h letter by letter tracking
 * the coset, emitting for each letter the basis element it contributes (an
 * inverse token for an inverse letter, nothing when the contribution is
 * trivial).  Token evaluation reproduces h exactly.
 */
inline std::vector<BasisToken> schreier_rewrite(const CosetSpace& cs,
                                                const SchreierTransversal&,
                                                const SchreierBasis& B,
                                                const FreeWord& h) {
  if (!in_subgroup(cs, h))
    throw NotInSubgroup("word " + to_string(h, cs.problem.generators) +
                        " is not in the subgroup");
  auto at = detail::basis_lookup(B);
  std::vector<BasisToken> tokens;
  int c = 0;
  for (const Letter& l : h.letters) {
    int d = act_letter(cs, c, l);
    // For a positive letter the contribution is the pair (c, gen); for an
    // inverse letter it is the inverse of the pair (d, gen).
    auto key = l.sign > 0 ? std::make_pair(c, l.gen) : std::make_pair(d, l.gen);
    auto it = at.find(key);
    if (it != at.end()) tokens.push_back(BasisToken{it->second, l.sign});
    c = d;
  }
  return tokens;
}

inline FreeWord evaluate_basis_tokens(const SchreierBasis& B,
                                      const std::vector<BasisToken>& tokens) {
  FreeWord acc;
  for (const BasisToken& t : tokens) {
    const FreeWord& b = B.elements[t.index].word;
    acc = reduce_concat(acc, t.sign > 0 ? b : invert_free(b));
  }
  return acc;
}

/**
 * Universal-property harness: given a map alpha from the basis into a
 * finite permutation group K, build the extension tau on generators as
 * wreath elements over K and verify that projecting at coset 0 recovers
 * alpha on every basis element, that tau respects products on sampled word
 * pairs, and that the permutation part of tau is rho throughout.
 */
inline Report verify_ns_universal(const CosetSpace& cs,
                                  const SchreierTransversal& T,
                                  const SchreierBasis& B, const PermGroup& K,
                                  const std::vector<Permutation>& alpha,
                                  int samples, uint64_t seed) {
  Report report;
  int m = static_cast<int>(cs.problem.generators.size());
  PermBaseGroup kbase{K.degree()};

  // alpha extended to all of H over the basis tokens.
  auto alpha_hat = [&](const FreeWord& h) {
    Permutation acc = Permutation::identity(K.degree());
    for (const BasisToken& t : schreier_rewrite(cs, T, B, h))
      acc = compose(acc, t.sign > 0 ? alpha[t.index] : alpha[t.index].inverse());
    return acc;
  };

  // tau on generators: apply alpha_hat to the components of the symbolic
  // standard embedding.
  std::vector<WreathElement<PermBaseGroup>> tau_gen, tau_gen_inv;
  for (int x = 0; x < m; ++x) {
    auto sym = standard_embed(cs, T.reps, free_letter(x, +1));
    tau_gen.push_back(map_base(kbase, alpha_hat, sym));
    tau_gen_inv.push_back(w_invert(kbase, tau_gen.back()));
  }
  auto tau = [&](const FreeWord& w) {
    auto acc = w_identity(kbase, cs.size);
    for (const Letter& l : w.letters)
      acc = w_multiply(kbase, acc, l.sign > 0 ? tau_gen[l.gen] : tau_gen_inv[l.gen]);
    return acc;
  };

  {
    bool ok = true;
    std::string witness;
    for (std::size_t k = 0; k < B.elements.size() && ok; ++k) {
      const FreeWord& b = B.elements[k].word;
      if (project_i(kbase, tau(b), 0) != alpha[k]) {
        ok = false;
        witness = "basis element " + to_string(b, cs.problem.generators);
      }
    }
    report.add("projection_extends_alpha", ok, witness);
  }
  {
    Rng rng(seed);
    bool ok = true;
    std::string witness;
    for (int s = 0; s < samples && ok; ++s) {
      FreeWord w = random_free_word(rng, m, 8);
      FreeWord v = random_free_word(rng, m, 8);
      auto lhs = tau(reduce_concat(w, v));
      auto rhs = w_multiply(kbase, tau(w), tau(v));
      if (!w_equal(kbase, lhs, rhs)) {
        ok = false;
        witness = "pair (" + to_string(w, cs.problem.generators) + ", " +
                  to_string(v, cs.problem.generators) + ")";
      }
    }
    report.add("tau_is_homomorphism", ok, witness);
  }
  {
    Rng rng(seed + 1);
    bool ok = true;
    std::string witness;
    for (int x = 0; x < m && ok; ++x)
      if (tau(free_letter(x, +1)).p != cs.gen_action[x]) {
        ok = false;
        witness = "generator " + cs.problem.generators[x];
      }
    for (int s = 0; s < samples && ok; ++s) {
      FreeWord w = random_free_word(rng, m, 8);
      if (tau(w).p != rho_of_word(cs, w)) {
        ok = false;
        witness = "word " + to_string(w, cs.problem.generators);
      }
    }
    report.add("permutation_part_is_rho", ok, witness);
  }
  return report;
}

}  // namespace freesub
