#ifndef FREESUB_TESTS_FIXTURES_HPP
#define FREESUB_TESTS_FIXTURES_HPP

#include <string>
#include <vector>

#include "freesub/action.hpp"
#include "freesub/cayley.hpp"
#include "freesub/perm.hpp"
#include "freesub/rng.hpp"

namespace fixtures {

inline freesub::Permutation perm(std::initializer_list<int> images) {
  return freesub::Permutation(std::vector<int>(images));
}

// Free group on {a, b} acting on 3 points via a -> (0 1), b -> (0 1 2).
// The image closure is all of Sym(3); with_sub adds S = <(0 1)> (index 3),
// otherwise S is trivial (index 6).
inline freesub::Problem ns_s3(bool with_sub) {
  freesub::Problem p;
  p.kind = freesub::ProblemKind::free_group;
  p.degree = 3;
  p.generators = {"a", "b"};
  p.images = {perm({1, 0, 2}), perm({1, 2, 0})};
  if (with_sub) p.subgroup = {perm({1, 0, 2})};
  return p;
}

// Free group on one generator a -> (0 1), trivial S: index 2, basis {a a}.
inline freesub::Problem ns_rank1() {
  freesub::Problem p;
  p.kind = freesub::ProblemKind::free_group;
  p.degree = 2;
  p.generators = {"a"};
  p.images = {perm({1, 0})};
  return p;
}

// C2 * C2, both factors acting by the swap on 2 points, trivial S: the
// subgroup is the kernel, free of rank 1 on (f1.1 f0.1).
inline freesub::Problem kurosh_c2c2() {
  freesub::Problem p;
  p.kind = freesub::ProblemKind::free_product;
  p.degree = 2;
  p.factors = {freesub::cyclic_group(2), freesub::cyclic_group(2)};
  p.factor_images = {
      {freesub::Permutation::identity(2), perm({1, 0})},
      {freesub::Permutation::identity(2), perm({1, 0})}};
  return p;
}

// C2 * C3 acting on 3 points via (0 1) and (0 1 2); the image closure is
// Sym(3).  with_sub adds S = <(0 1)> (index 3), otherwise index 6.
inline freesub::Problem kurosh_c2c3(bool with_sub) {
  freesub::Problem p;
  p.kind = freesub::ProblemKind::free_product;
  p.degree = 3;
  p.factors = {freesub::cyclic_group(2), freesub::cyclic_group(3)};
  p.factor_images = {
      {freesub::Permutation::identity(3), perm({1, 0, 2})},
      {freesub::Permutation::identity(3), perm({1, 2, 0}), perm({2, 0, 1})}};
  if (with_sub) p.subgroup = {perm({1, 0, 2})};
  return p;
}

inline std::vector<freesub::Problem> all_kurosh_problems() {
  return {kurosh_c2c2(), kurosh_c2c3(false), kurosh_c2c3(true)};
}

inline freesub::Permutation random_perm(freesub::Rng& rng, int degree) {
  std::vector<int> images(degree);
  for (int i = 0; i < degree; ++i) images[i] = i;
  for (int i = degree - 1; i > 0; --i)
    std::swap(images[i], images[rng.below_int(i + 1)]);
  return freesub::Permutation(std::move(images));
}

}  // namespace fixtures

#endif
