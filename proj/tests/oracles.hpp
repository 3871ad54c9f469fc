#ifndef FREESUB_TESTS_ORACLES_HPP
#define FREESUB_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "freesub/action.hpp"
#include "freesub/cayley.hpp"
#include "freesub/fingrp.hpp"
#include "freesub/perm.hpp"
#include "freesub/rng.hpp"
#include "freesub/sampling.hpp"
#include "freesub/words.hpp"

// Deliberately naive reimplementations used as cross-checks.  Everything here
// favors the most literal algorithm over the one the library uses: repeated
// full scans instead of incremental stacks, saturation instead of BFS layers,
// exhaustive enumeration instead of backtracking.

namespace oracles {

// Scans for an adjacent inverse pair, removes it, and restarts until none.
inline std::vector<freesub::Letter> naive_reduce(
    std::vector<freesub::Letter> letters) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < letters.size(); ++i) {
      if (letters[i].gen == letters[i + 1].gen &&
          letters[i].sign == -letters[i + 1].sign) {
        letters.erase(letters.begin() + i, letters.begin() + i + 2);
        changed = true;
        break;
      }
    }
  }
  return letters;
}

// Merges an adjacent same-factor pair (dropping identity results) and
// restarts until the sequence is alternating with no identity syllables.
inline std::vector<freesub::FactorElement> naive_normalize(
    std::vector<freesub::FactorElement> syllables,
    const std::vector<freesub::CayleyGroup>& tables) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < syllables.size(); ++i) {
      if (syllables[i].elem == 0) {
        syllables.erase(syllables.begin() + i);
        changed = true;
        break;
      }
      if (i + 1 < syllables.size() &&
          syllables[i].factor == syllables[i + 1].factor) {
        syllables[i].elem = tables[syllables[i].factor].mul(
            syllables[i].elem, syllables[i + 1].elem);
        syllables.erase(syllables.begin() + i + 1);
        changed = true;
        break;
      }
    }
  }
  return syllables;
}

// Saturation closure: multiply every known pair until nothing new appears.
inline std::set<std::vector<int>> naive_closure(
    int degree, const std::vector<freesub::Permutation>& generators) {
  std::set<std::vector<int>> known;
  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);
  known.insert(id);
  for (const auto& g : generators) known.insert(g.images());
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::vector<int>> snapshot(known.begin(), known.end());
    for (const auto& a : snapshot)
      for (const auto& b : snapshot) {
        std::vector<int> ab(degree);
        for (int i = 0; i < degree; ++i) ab[i] = b[a[i]];
        if (known.insert(ab).second) changed = true;
      }
  }
  return known;
}

// Enumerates every map G -> K with im[0] = 0 by odometer and keeps the ones
// that respect every product.  Output is in lexicographic image-tuple order
// because the odometer increments the last position fastest.
inline std::vector<std::vector<int>> naive_homs(const freesub::CayleyGroup& G,
                                                const freesub::PermGroup& K) {
  int n = G.order();
  int k = K.order();
  std::vector<std::vector<int>> result;
  std::vector<int> im(n, 0);
  while (true) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b)
        if (K.mul(im[a], im[b]) != im[G.mul(a, b)]) ok = false;
    if (ok) result.push_back(im);
    int pos = n - 1;
    while (pos >= 1 && im[pos] == k - 1) im[pos--] = 0;
    if (pos < 1) break;
    ++im[pos];
  }
  return result;
}

// Right cosets of S in Q as sorted member-index sets, computed by direct
// multiplication of whole cosets.  Returned sorted by least member
// permutation, matching the library's canonical coset order.
inline std::vector<std::vector<int>> naive_right_cosets(
    const freesub::PermGroup& Q, const std::vector<int>& S_elements) {
  std::set<std::vector<int>> cosets;
  for (int q = 0; q < Q.order(); ++q) {
    std::vector<int> members;
    for (int s : S_elements) members.push_back(Q.mul(s, q));
    std::sort(members.begin(), members.end());
    cosets.insert(members);
  }
  std::vector<std::vector<int>> out(cosets.begin(), cosets.end());
  std::sort(out.begin(), out.end(),
            [&](const std::vector<int>& a, const std::vector<int>& b) {
              auto least = [&](const std::vector<int>& c) {
                std::vector<int> best = Q.element(c[0]).images();
                for (int m : c)
                  best = std::min(best, Q.element(m).images());
                return best;
              };
              return least(a) < least(b);
            });
  return out;
}

// Counts classes of Q under q ~ s * q * x for s in S and x in the images of
// one factor, by flood fill over the element set.
inline int naive_double_coset_count(
    const freesub::PermGroup& Q, const std::vector<int>& S_elements,
    const std::vector<freesub::Permutation>& factor_images) {
  int n = Q.order();
  std::vector<int> cls(n, -1);
  int classes = 0;
  for (int start = 0; start < n; ++start) {
    if (cls[start] >= 0) continue;
    std::vector<int> queue = {start};
    cls[start] = classes;
    while (!queue.empty()) {
      int q = queue.back();
      queue.pop_back();
      for (int s : S_elements)
        for (const auto& x : factor_images) {
          freesub::Permutation image =
              freesub::compose(freesub::compose(Q.element(s), Q.element(q)), x);
          int idx = Q.index_of(image);
          if (cls[idx] < 0) {
            cls[idx] = classes;
            queue.push_back(idx);
          }
        }
    }
    ++classes;
  }
  return classes;
}

// Exact rational arithmetic for Euler characteristic checks.
struct Frac {
  long long num;
  long long den;

  Frac(long long n, long long d) : num(n), den(d) { normalize(); }
  explicit Frac(long long n) : num(n), den(1) {}

  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  friend Frac operator+(Frac a, Frac b) {
    return Frac(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Frac operator-(Frac a, Frac b) {
    return Frac(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Frac operator*(Frac a, Frac b) {
    return Frac(a.num * b.num, a.den * b.den);
  }
  friend bool operator==(const Frac& a, const Frac& b) {
    return a.num == b.num && a.den == b.den;
  }
};

// chi(F1 * ... * Fm * free of rank r) with factor orders given.
inline Frac euler_characteristic(const std::vector<int>& factor_orders,
                                 int free_rank) {
  Frac chi(1 - free_rank);
  for (int o : factor_orders) chi = chi + Frac(1, o) - Frac(1);
  return chi;
}

// Word table over Q for the free-group case: word_of[q] maps to Q.element(q)
// under the generator images.  Built by BFS so words are short.
inline std::vector<freesub::FreeWord> free_word_table(
    const freesub::CosetSpace& cs) {
  const freesub::PermGroup& Q = cs.Q;
  int num_gens = static_cast<int>(cs.problem.generators.size());
  std::vector<freesub::FreeWord> table(Q.order());
  std::vector<bool> seen(Q.order(), false);
  seen[Q.index_of(freesub::Permutation::identity(Q.degree()))] = true;
  std::vector<int> queue = {
      Q.index_of(freesub::Permutation::identity(Q.degree()))};
  std::size_t head = 0;
  while (head < queue.size()) {
    int q = queue[head++];
    for (int g = 0; g < num_gens; ++g)
      for (int sign : {1, -1}) {
        freesub::Permutation img = cs.problem.images[g];
        if (sign < 0) img = img.inverse();
        int next = Q.index_of(freesub::compose(Q.element(q), img));
        if (!seen[next]) {
          seen[next] = true;
          table[next] = freesub::reduce_concat(
              table[q], freesub::free_letter(g, sign));
          queue.push_back(next);
        }
      }
  }
  return table;
}

inline freesub::Permutation naive_eval_free(
    const freesub::FreeWord& w, const std::vector<freesub::Permutation>& images,
    int degree) {
  freesub::Permutation acc = freesub::Permutation::identity(degree);
  for (const auto& letter : w.letters) {
    freesub::Permutation img = images[letter.gen];
    if (letter.sign < 0) img = img.inverse();
    acc = freesub::compose(acc, img);
  }
  return acc;
}

// A random word with trivial image: any word completed by a word mapping to
// the inverse of its image.  Its coset action is then the identity.
inline freesub::FreeWord random_core_word(
    freesub::Rng& rng, const freesub::CosetSpace& cs,
    const std::vector<freesub::FreeWord>& word_table, int max_len) {
  freesub::FreeWord w = freesub::random_free_word(
      rng, static_cast<int>(cs.problem.generators.size()), max_len);
  freesub::Permutation img =
      naive_eval_free(w, cs.problem.images, cs.Q.degree());
  const freesub::FreeWord& completion = word_table[cs.Q.index_of(img)];
  return freesub::reduce_concat(w, freesub::invert_free(completion));
}

}  // namespace oracles

#endif
