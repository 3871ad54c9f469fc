#pragma once

#include <concepts>
#include <cstddef>
#include <utility>
#include <vector>

#include "freesub/action.hpp"
#include "freesub/errors.hpp"
#include "freesub/perm.hpp"
#include "freesub/words.hpp"

namespace freesub {

/**
 * Base-group interface for wreath products: a stateless or table-backed
 * handle exposing the group operations on its element type.  Words and
 * finite-group elements both model this.
 */
template <class B>
concept BaseGroup = requires(const B& b, const typename B::Elem& x,
                             const typename B::Elem& y) {
  { b.identity() } -> std::convertible_to<typename B::Elem>;
  { b.multiply(x, y) } -> std::convertible_to<typename B::Elem>;
  { b.invert(x) } -> std::convertible_to<typename B::Elem>;
  { b.equal(x, y) } -> std::convertible_to<bool>;
};

/// Free-group words as a wreath base.
struct FreeWordGroup {
  using Elem = FreeWord;
  Elem identity() const { return FreeWord{}; }
  Elem multiply(const Elem& a, const Elem& b) const { return reduce_concat(a, b); }
  Elem invert(const Elem& a) const { return invert_free(a); }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
};

/// Free-product words as a wreath base.  Holds the factor tables.
struct ProductWordGroup {
  using Elem = ProductWord;
  const std::vector<CayleyGroup>* tables = nullptr;
  Elem identity() const { return ProductWord{}; }
  Elem multiply(const Elem& a, const Elem& b) const {
    return normalize_product(a, b, *tables);
  }
  Elem invert(const Elem& a) const { return invert_product(a, *tables); }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
};

/// Permutations of a fixed degree as a wreath base.
struct PermBaseGroup {
  using Elem = Permutation;
  int degree = 0;
  Elem identity() const { return Permutation::identity(degree); }
  Elem multiply(const Elem& a, const Elem& b) const { return compose(a, b); }
  Elem invert(const Elem& a) const { return a.inverse(); }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
};

/**
 * An element (f, p) of the wreath product A wr P: a total map f from the
 * permuted set to the base group A, and the permutation part p.
 */
template <class B>
struct WreathElement {
  std::vector<typename B::Elem> f;
  Permutation p;

  int points() const { return static_cast<int>(f.size()); }
};

template <BaseGroup B>
WreathElement<B> w_identity(const B& base, int n) {
  WreathElement<B> e;
  e.f.assign(n, base.identity());
  e.p = Permutation::identity(n);
  return e;
}

/// (f,p)(f',p') = (s -> f(s)*f'(s*p), p*p'), permutations left-to-right.
template <BaseGroup B>
WreathElement<B> w_multiply(const B& base, const WreathElement<B>& a,
                            const WreathElement<B>& b) {
  if (a.points() != b.points())
    throw DomainMismatch("wreath elements over different point sets");
  WreathElement<B> r;
  r.f.reserve(a.f.size());
  for (int s = 0; s < a.points(); ++s)
    r.f.push_back(base.multiply(a.f[s], b.f[a.p[s]]));
  r.p = compose(a.p, b.p);
  return r;
}

/// (f,p)^-1 = (s -> f(s*p^-1)^-1, p^-1).
template <BaseGroup B>
WreathElement<B> w_invert(const B& base, const WreathElement<B>& a) {
  WreathElement<B> r;
  r.p = a.p.inverse();
  r.f.reserve(a.f.size());
  for (int s = 0; s < a.points(); ++s) r.f.push_back(base.invert(a.f[r.p[s]]));
  return r;
}

template <BaseGroup B>
bool w_equal(const B& base, const WreathElement<B>& a, const WreathElement<B>& b) {
  if (a.p != b.p || a.points() != b.points()) return false;
  for (int s = 0; s < a.points(); ++s)
    if (!base.equal(a.f[s], b.f[s])) return false;
  return true;
}

/// The diagonal embedding a -> (constant a, id).
template <BaseGroup B>
WreathElement<B> diagonal(const B& base, const typename B::Elem& a, int n) {
  (void)base;
  WreathElement<B> e;
  e.f.assign(n, a);
  e.p = Permutation::identity(n);
  return e;
}

/// Functoriality on the base: (f, p) -> (alpha of f, p).  The caller
/// guarantees alpha is a homomorphism.
template <BaseGroup BTo, class BFrom, class F>
WreathElement<BTo> map_base(const BTo&, F&& alpha, const WreathElement<BFrom>& a) {
  WreathElement<BTo> r;
  r.f.reserve(a.f.size());
  for (const auto& x : a.f) r.f.push_back(alpha(x));
  r.p = a.p;
  return r;
}

/// The projection pi_{A,i}, defined only when p fixes point i.
template <BaseGroup B>
const typename B::Elem& project_i(const B&, const WreathElement<B>& a, int i) {
  if (a.p[i] != i) throw PointNotFixed(i);
  return a.f[i];
}

/**
 * Cocycle expansion: fold the assigned wreath elements of the tokens of w
 * left-to-right, reading each f at the coset reached so far and starting at
 * coset 0.  Equals the coset-0 component of the full wreath product.
 */
template <BaseGroup B, class Token, class ToWreath>
typename B::Elem cocycle_expand(const B& base, const std::vector<Token>& tokens,
                                ToWreath&& wreath_of) {
  typename B::Elem acc = base.identity();
  int coset = 0;
  for (const Token& t : tokens) {
    const WreathElement<B>& e = wreath_of(t);
    acc = base.multiply(acc, e.f[coset]);
    coset = e.p[coset];
  }
  return acc;
}

namespace detail {
template <class Word>
void check_transversal(const CosetSpace& cs, const std::vector<Word>& T) {
  if (static_cast<int>(T.size()) != cs.size)
    throw InvalidTransversal(static_cast<int>(T.size()),
                             "expected one representative per coset");
  if (!T[0].is_identity())
    throw InvalidTransversal(0, "representative of coset 0 must be the identity");
  for (int i = 0; i < cs.size; ++i)
    if (rho_of_word(cs, T[i])[0] != i)
      throw InvalidTransversal(i, "representative lies in coset " +
                                      std::to_string(rho_of_word(cs, T[i])[0]));
}
}  // namespace detail

/**
 * The standard embedding into (words) wr rho(G): for a word g,
 * f_g(i) = T[i] * g * T[i * rho(g)]^-1, with permutation part rho(g).
 * Every component f_g(i) lies in H.
 */
inline WreathElement<FreeWordGroup> standard_embed(const CosetSpace& cs,
                                                   const std::vector<FreeWord>& T,
                                                   const FreeWord& g) {
  detail::check_transversal(cs, T);
  FreeWordGroup base;
  WreathElement<FreeWordGroup> r;
  r.p = rho_of_word(cs, g);
  r.f.reserve(cs.size);
  for (int i = 0; i < cs.size; ++i)
    r.f.push_back(base.multiply(base.multiply(T[i], g), base.invert(T[r.p[i]])));
  return r;
}

inline WreathElement<ProductWordGroup> standard_embed(
    const CosetSpace& cs, const std::vector<ProductWord>& T,
    const ProductWord& g) {
  detail::check_transversal(cs, T);
  ProductWordGroup base{&cs.problem.factors};
  WreathElement<ProductWordGroup> r;
  r.p = rho_of_word(cs, g);
  r.f.reserve(cs.size);
  for (int i = 0; i < cs.size; ++i)
    r.f.push_back(base.multiply(base.multiply(T[i], g), base.invert(T[r.p[i]])));
  return r;
}

}  // namespace freesub
