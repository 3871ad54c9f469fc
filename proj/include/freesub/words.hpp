#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "freesub/cayley.hpp"
#include "freesub/errors.hpp"

namespace freesub {

// ---------------------------------------------------------------------------
// Free-group words
// ---------------------------------------------------------------------------

/// One letter of a free-group word: a generator index and a sign (+1 or -1).
struct Letter {
  int gen = 0;
  int sign = +1;
  auto operator<=>(const Letter&) const = default;
};

/**
 * A reduced word over a free generating set.  The empty word is the identity.
 *
 * Every operation in this module returns fully reduced words; unreduced
 * letter sequences exist only inside an operation.
 */
struct FreeWord {
  std::vector<Letter> letters;

  bool is_identity() const { return letters.empty(); }
  int length() const { return static_cast<int>(letters.size()); }
  auto operator<=>(const FreeWord&) const = default;
};

inline bool is_reduced(const FreeWord& w) {
  for (std::size_t i = 1; i < w.letters.size(); ++i)
    if (w.letters[i].gen == w.letters[i - 1].gen &&
        w.letters[i].sign == -w.letters[i - 1].sign)
      return false;
  return true;
}

inline FreeWord free_letter(int gen, int sign) { return FreeWord{{Letter{gen, sign}}}; }

namespace detail {
inline void push_reduced(std::vector<Letter>& out, const Letter& l) {
  if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign)
    out.pop_back();
  else
    out.push_back(l);
}
}  // namespace detail

/// Reduced form of the concatenation a*b.  Only boundary cancellation can
/// occur when both inputs are reduced.
inline FreeWord reduce_concat(const FreeWord& a, const FreeWord& b) {
  std::vector<Letter> out = a.letters;
  out.reserve(a.letters.size() + b.letters.size());
  for (const Letter& l : b.letters) detail::push_reduced(out, l);
  return FreeWord{std::move(out)};
}

/// Reduce an arbitrary letter sequence to normal form.
inline FreeWord reduce_letters(const std::vector<Letter>& letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (const Letter& l : letters) detail::push_reduced(out, l);
  return FreeWord{std::move(out)};
}

inline FreeWord invert_free(const FreeWord& a) {
  std::vector<Letter> out;
  out.reserve(a.letters.size());
  for (auto it = a.letters.rbegin(); it != a.letters.rend(); ++it)
    out.push_back(Letter{it->gen, -it->sign});
  return FreeWord{std::move(out)};
}

// ---------------------------------------------------------------------------
// Free-product words
// ---------------------------------------------------------------------------

/// One syllable of a free-product word: a nontrivial element of one factor.
struct FactorElement {
  int factor = 0;
  int elem = 0;  // element index within the factor; 0 is the identity
  auto operator<=>(const FactorElement&) const = default;
};

/**
 * An element of a free product of finite factors, in normal form: no
 * identity syllables, and adjacent syllables belong to distinct factors.
 * The empty sequence is the identity and has syllable length 0.
 */
struct ProductWord {
  std::vector<FactorElement> syllables;

  bool is_identity() const { return syllables.empty(); }
  auto operator<=>(const ProductWord&) const = default;
};

inline bool is_normal_form(const ProductWord& w) {
  for (std::size_t i = 0; i < w.syllables.size(); ++i) {
    if (w.syllables[i].elem == 0) return false;
    if (i > 0 && w.syllables[i].factor == w.syllables[i - 1].factor) return false;
  }
  return true;
}

inline ProductWord product_syllable(int factor, int elem) {
  if (elem == 0) return ProductWord{};
  return ProductWord{{FactorElement{factor, elem}}};
}

namespace detail {
inline const CayleyGroup& factor_table(std::span<const CayleyGroup> tables, int factor) {
  if (factor < 0 || static_cast<std::size_t>(factor) >= tables.size())
    throw FactorIndexError("factor index " + std::to_string(factor) + " out of range");
  return tables[factor];
}

inline void push_normal(std::vector<FactorElement>& out, FactorElement s,
                        std::span<const CayleyGroup> tables) {
  const CayleyGroup& g = factor_table(tables, s.factor);
  if (s.elem < 0 || s.elem >= g.order())
    throw FactorIndexError("element index " + std::to_string(s.elem) +
                           " out of range for factor " + std::to_string(s.factor));
  if (s.elem == 0) return;
  if (!out.empty() && out.back().factor == s.factor) {
    int merged = g.mul(out.back().elem, s.elem);
    out.pop_back();
    if (merged != 0) out.push_back(FactorElement{s.factor, merged});
    // On a full cancellation the new boundary pair may merge again; the
    // caller feeds syllables one at a time, so the next push handles it.
  } else {
    out.push_back(s);
  }
}
}  // namespace detail

/// Normal form of the product a*b.  Boundary syllables of equal factor merge
/// through the factor's Cayley table; identities drop and the merge cascades.
inline ProductWord normalize_product(const ProductWord& a, const ProductWord& b,
                                     std::span<const CayleyGroup> tables) {
  std::vector<FactorElement> out = a.syllables;
  out.reserve(a.syllables.size() + b.syllables.size());
  for (const FactorElement& s : b.syllables) detail::push_normal(out, s, tables);
  return ProductWord{std::move(out)};
}

/// Normal form of an arbitrary syllable sequence.
inline ProductWord normalize_syllables(const std::vector<FactorElement>& syllables,
                                       std::span<const CayleyGroup> tables) {
  std::vector<FactorElement> out;
  out.reserve(syllables.size());
  for (const FactorElement& s : syllables) detail::push_normal(out, s, tables);
  return ProductWord{std::move(out)};
}

inline ProductWord invert_product(const ProductWord& a, std::span<const CayleyGroup> tables) {
  std::vector<FactorElement> out;
  out.reserve(a.syllables.size());
  for (auto it = a.syllables.rbegin(); it != a.syllables.rend(); ++it) {
    const CayleyGroup& g = detail::factor_table(tables, it->factor);
    out.push_back(FactorElement{it->factor, g.inv(it->elem)});
  }
  return ProductWord{std::move(out)};
}

/// Syllable length and the factor of the final syllable (nullopt for the
/// identity, whose syllable length is 0).
inline std::pair<int, std::optional<int>> syllable_info(const ProductWord& a) {
  if (a.syllables.empty()) return {0, std::nullopt};
  return {static_cast<int>(a.syllables.size()), a.syllables.back().factor};
}

// ---------------------------------------------------------------------------
// External word syntax
//
// Free words: whitespace-separated tokens `g` or `g^-1`.
// Product words: tokens `f<factor>.<elem>` with elem >= 1.
// The identity in both syntaxes is the single token `1`.
// ---------------------------------------------------------------------------

inline std::string to_string(const FreeWord& w, const std::vector<std::string>& names) {
  if (w.is_identity()) return "1";
  std::string s;
  for (const Letter& l : w.letters) {
    if (!s.empty()) s += ' ';
    s += names[l.gen];
    if (l.sign < 0) s += "^-1";
  }
  return s;
}

inline std::string to_string(const ProductWord& w) {
  if (w.is_identity()) return "1";
  std::string s;
  for (const FactorElement& f : w.syllables) {
    if (!s.empty()) s += ' ';
    s += 'f' + std::to_string(f.factor) + '.' + std::to_string(f.elem);
  }
  return s;
}

namespace detail {
inline std::vector<std::string> split_tokens(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}
}  // namespace detail

inline FreeWord parse_free_word(const std::string& text,
                                const std::vector<std::string>& names) {
  auto tokens = detail::split_tokens(text);
  if (tokens.size() == 1 && tokens[0] == "1") return FreeWord{};
  std::vector<Letter> letters;
  for (const std::string& tok : tokens) {
    if (tok == "1")
      throw UnknownGenerator("token '1' is only valid as the whole word");
    int sign = +1;
    std::string name = tok;
    if (name.size() > 3 && name.substr(name.size() - 3) == "^-1") {
      sign = -1;
      name = name.substr(0, name.size() - 3);
    }
    int gen = -1;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) gen = static_cast<int>(i);
    if (gen < 0) throw UnknownGenerator("unknown generator '" + name + "'");
    letters.push_back(Letter{gen, sign});
  }
  return reduce_letters(letters);
}

inline ProductWord parse_product_word(const std::string& text,
                                      std::span<const CayleyGroup> tables) {
  auto tokens = detail::split_tokens(text);
  if (tokens.size() == 1 && tokens[0] == "1") return ProductWord{};
  std::vector<FactorElement> syllables;
  for (const std::string& tok : tokens) {
    if (tok == "1")
      throw FactorIndexError("token '1' is only valid as the whole word");
    auto dot = tok.find('.');
    if (tok.size() < 4 || tok[0] != 'f' || dot == std::string::npos)
      throw FactorIndexError("bad syllable token '" + tok + "', expected f<factor>.<elem>");
    std::string factor_digits = tok.substr(1, dot - 1);
    std::string elem_digits = tok.substr(dot + 1);
    auto all_digits = [](const std::string& s) {
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    if (!all_digits(factor_digits) || !all_digits(elem_digits))
      throw FactorIndexError("bad syllable token '" + tok + "', expected f<factor>.<elem>");
    int factor, elem;
    try {
      factor = std::stoi(factor_digits);
      elem = std::stoi(elem_digits);
    } catch (const std::exception&) {
      throw FactorIndexError("bad syllable token '" + tok + "'");
    }
    if (elem < 1)
      throw FactorIndexError("element index in '" + tok + "' must be >= 1");
    detail::factor_table(tables, factor);  // range check
    if (elem >= tables[factor].order())
      throw FactorIndexError("element index in '" + tok + "' out of range");
    syllables.push_back(FactorElement{factor, elem});
  }
  return normalize_syllables(syllables, tables);
}

}  // namespace freesub
