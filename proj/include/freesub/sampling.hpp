#pragma once

#include <vector>

#include "freesub/action.hpp"
#include "freesub/rng.hpp"
#include "freesub/words.hpp"

namespace freesub {

/// Uniform random reduced word: picks a length in [0, max_len], then letters
/// uniformly; free reduction may shorten the result.
inline FreeWord random_free_word(Rng& rng, int num_gens, int max_len) {
  int len = rng.below_int(max_len + 1);
  std::vector<Letter> letters;
  letters.reserve(len);
  for (int i = 0; i < len; ++i) {
    int g = rng.below_int(num_gens);
    int sign = rng.below(2) == 0 ? +1 : -1;
    letters.push_back(Letter{g, sign});
  }
  return reduce_letters(letters);
}

/// Random normal-form product word with at most max_syllables syllables.
inline ProductWord random_product_word(Rng& rng,
                                       const std::vector<CayleyGroup>& tables,
                                       int max_syllables) {
  int len = rng.below_int(max_syllables + 1);
  std::vector<FactorElement> syll;
  syll.reserve(len);
  for (int i = 0; i < len; ++i) {
    int f = rng.below_int(static_cast<int>(tables.size()));
    int e = rng.below_int(tables[f].order());
    syll.push_back(FactorElement{f, e});
  }
  return normalize_syllables(syll, tables);
}

/// Random element of H: draw any word w and close it up with the inverse of
/// the transversal representative of its coset, so membership is exact by
/// construction.
inline FreeWord random_subgroup_element(Rng& rng, const CosetSpace& cs,
                                        const std::vector<FreeWord>& T,
                                        int max_len) {
  FreeWord w = random_free_word(
      rng, static_cast<int>(cs.problem.generators.size()), max_len);
  int c = rho_of_word(cs, w)[0];
  return reduce_concat(w, invert_free(T[c]));
}

inline ProductWord random_subgroup_element(Rng& rng, const CosetSpace& cs,
                                           const std::vector<ProductWord>& T,
                                           int max_syllables) {
  ProductWord w = random_product_word(rng, cs.problem.factors, max_syllables);
  int c = rho_of_word(cs, w)[0];
  return normalize_product(w, invert_product(T[c], cs.problem.factors),
                           cs.problem.factors);
}

}  // namespace freesub
