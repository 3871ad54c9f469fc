#pragma once

#include <compare>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "freesub/errors.hpp"

namespace freesub {

/**
 * A permutation of {0, ..., degree-1} in one-line notation: images[i] is the
 * image of point i.
 *
 * Permutations multiply left-to-right: in compose(a, b), a is applied first.
 * This matches the convention used for coset actions throughout the library
 * (a right action written s . g).
 */
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (int v : images_) {
      if (v < 0 || static_cast<std::size_t>(v) >= images_.size() || seen[v])
        throw InvalidPermutation("not a bijection in one-line notation");
      seen[v] = 1;
    }
  }

  static Permutation identity(int degree) {
    std::vector<int> im(degree);
    std::iota(im.begin(), im.end(), 0);
    return Permutation(std::move(im));
  }

  int degree() const { return static_cast<int>(images_.size()); }
  int operator[](int i) const { return images_[i]; }
  const std::vector<int>& images() const { return images_; }

  bool is_identity() const {
    for (int i = 0; i < degree(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<int> im(images_.size());
    for (int i = 0; i < degree(); ++i) im[images_[i]] = i;
    return Permutation(std::move(im));
  }

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

/// Left-to-right product: apply `first`, then `second`.
inline Permutation compose(const Permutation& first, const Permutation& second) {
  if (first.degree() != second.degree())
    throw DomainMismatch("composing permutations of different degree");
  std::vector<int> im(first.degree());
  for (int i = 0; i < first.degree(); ++i) im[i] = second[first[i]];
  return Permutation(std::move(im));
}

inline std::string to_string(const Permutation& p) {
  std::string s = "[";
  for (int i = 0; i < p.degree(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + "]";
}

}  // namespace freesub
