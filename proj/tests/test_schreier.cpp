#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "freesub/sampling.hpp"
#include "freesub/schreier.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace freesub;

namespace {

std::string rep_str(const CosetSpace& cs, const SchreierTransversal& T, int i) {
  return to_string(T.reps[i], cs.problem.generators);
}

// All reduced words in shortlex order (positive generators first, then
// inverses) up to the given length.  Independent enumeration used to check
// that each representative is the shortlex-least word of its coset.
std::vector<FreeWord> shortlex_words(int num_gens, int max_len) {
  std::vector<Letter> letter_order;
  for (int g = 0; g < num_gens; ++g) letter_order.push_back(Letter{g, +1});
  for (int g = 0; g < num_gens; ++g) letter_order.push_back(Letter{g, -1});
  std::vector<FreeWord> all = {FreeWord{}};
  std::vector<FreeWord> layer = {FreeWord{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<FreeWord> next;
    for (const FreeWord& w : layer)
      for (const Letter& l : letter_order) {
        if (!w.letters.empty() && w.letters.back().gen == l.gen &&
            w.letters.back().sign == -l.sign)
          continue;
        FreeWord longer = w;
        longer.letters.push_back(l);
        next.push_back(longer);
      }
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return all;
}

}  // namespace

TEST_CASE("transversal for the rank-one problem") {
  CosetSpace cs = build_coset_space(fixtures::ns_rank1());
  SchreierTransversal T = build_transversal(cs);
  REQUIRE(T.reps.size() == 2);
  CHECK(rep_str(cs, T, 0) == "1");
  CHECK(rep_str(cs, T, 1) == "a");
}

TEST_CASE("transversal for the index-six problem") {
  CosetSpace cs = build_coset_space(fixtures::ns_s3(false));
  SchreierTransversal T = build_transversal(cs);
  REQUIRE(T.reps.size() == 6);
  CHECK(rep_str(cs, T, 0) == "1");
  CHECK(rep_str(cs, T, 1) == "a b^-1");
  CHECK(rep_str(cs, T, 2) == "a");
  CHECK(rep_str(cs, T, 3) == "b");
  CHECK(rep_str(cs, T, 4) == "b^-1");
  CHECK(rep_str(cs, T, 5) == "a b");
}

TEST_CASE("transversal for the index-three problem") {
  CosetSpace cs = build_coset_space(fixtures::ns_s3(true));
  SchreierTransversal T = build_transversal(cs);
  REQUIRE(T.reps.size() == 3);
  CHECK(rep_str(cs, T, 0) == "1");
  CHECK(rep_str(cs, T, 1) == "b^-1");
  CHECK(rep_str(cs, T, 2) == "b");
}

TEST_CASE("representatives are prefix-closed") {
  for (Problem p : {fixtures::ns_rank1(), fixtures::ns_s3(false),
                    fixtures::ns_s3(true)}) {
    CosetSpace cs = build_coset_space(p);
    SchreierTransversal T = build_transversal(cs);
    for (int c = 0; c < cs.size; ++c) {
      for (int cut = 0; cut <= T.reps[c].length(); ++cut) {
        FreeWord prefix{std::vector<Letter>(T.reps[c].letters.begin(),
                                            T.reps[c].letters.begin() + cut)};
        int coset = rho_of_word(cs, prefix)[0];
        CHECK(T.reps[coset] == prefix);
      }
    }
  }
}

TEST_CASE("each representative is the shortlex-least word in its coset") {
  for (Problem p : {fixtures::ns_rank1(), fixtures::ns_s3(false),
                    fixtures::ns_s3(true)}) {
    CosetSpace cs = build_coset_space(p);
    SchreierTransversal T = build_transversal(cs);
    int num_gens = static_cast<int>(p.generators.size());
    int max_len = 0;
    for (const FreeWord& w : T.reps) max_len = std::max(max_len, w.length());
    std::vector<bool> found(cs.size, false);
    for (const FreeWord& w : shortlex_words(num_gens, max_len)) {
      int coset = rho_of_word(cs, w)[0];
      if (!found[coset]) {
        found[coset] = true;
        CHECK(T.reps[coset] == w);
      }
    }
  }
}

TEST_CASE("transversals require a free-group problem") {
  CosetSpace cs = build_coset_space(fixtures::kurosh_c2c2());
  CHECK_THROWS_AS(build_transversal(cs), WrongKind);
}

TEST_CASE("basis of the rank-one problem") {
  CosetSpace cs = build_coset_space(fixtures::ns_rank1());
  SchreierTransversal T = build_transversal(cs);
  SchreierBasis B = schreier_basis(cs, T);
  REQUIRE(B.rank() == 1);
  CHECK(to_string(B.elements[0].word, {"a"}) == "a a");
  CHECK(B.elements[0].coset == 1);
  CHECK(B.elements[0].gen == 0);
}

TEST_CASE("basis of the index-three problem") {
  CosetSpace cs = build_coset_space(fixtures::ns_s3(true));
  SchreierTransversal T = build_transversal(cs);
  SchreierBasis B = schreier_basis(cs, T);
  REQUIRE(B.rank() == 4);
  auto word = [&](int k) {
    return to_string(B.elements[k].word, cs.problem.generators);
  };
  CHECK(word(0) == "a");
  CHECK(word(1) == "b^-1 a b^-1");
  CHECK(word(2) == "b a b");
  CHECK(word(3) == "b b b");
  CHECK(B.elements[1].coset == 1);
  CHECK(B.elements[3].coset == 2);
  CHECK(B.elements[3].gen == 1);
}

TEST_CASE("basis size follows the index formula") {
  std::vector<Problem> problems = {fixtures::ns_rank1(), fixtures::ns_s3(false),
                                   fixtures::ns_s3(true)};
  Problem whole = fixtures::ns_s3(false);
  whole.subgroup = whole.images;
  problems.push_back(whole);
  for (const Problem& p : problems) {
    CosetSpace cs = build_coset_space(p);
    SchreierTransversal T = build_transversal(cs);
    SchreierBasis B = schreier_basis(cs, T);
    int m = static_cast<int>(p.generators.size());
    CHECK(B.rank() == cs.size * (m - 1) + 1);
  }
}

TEST_CASE("basis elements are reduced, distinct members of H") {
  CosetSpace cs = build_coset_space(fixtures::ns_s3(false));
  SchreierTransversal T = build_transversal(cs);
  SchreierBasis B = schreier_basis(cs, T);
  REQUIRE(B.rank() == 7);
  std::set<FreeWord> seen;
  for (const auto& entry : B.elements) {
    CHECK(is_reduced(entry.word));
    CHECK(in_subgroup(cs, entry.word));
    CHECK(seen.insert(entry.word).second);
  }
}

TEST_CASE("rewriting a basis element yields exactly its own token") {
  for (Problem p : {fixtures::ns_rank1(), fixtures::ns_s3(false),
                    fixtures::ns_s3(true)}) {
    CosetSpace cs = build_coset_space(p);
    SchreierTransversal T = build_transversal(cs);
    SchreierBasis B = schreier_basis(cs, T);
    for (int k = 0; k < B.rank(); ++k) {
      auto tokens = schreier_rewrite(cs, T, B, B.elements[k].word);
      REQUIRE(tokens.size() == 1);
      CHECK(tokens[0].index == k);
      CHECK(tokens[0].sign == +1);

      auto inv = schreier_rewrite(cs, T, B, invert_free(B.elements[k].word));
      REQUIRE(inv.size() == 1);
      CHECK(inv[0].index == k);
      CHECK(inv[0].sign == -1);
    }
  }
}

TEST_CASE("rewrite examples") {
  CosetSpace cs = build_coset_space(fixtures::ns_rank1());
  SchreierTransversal T = build_transversal(cs);
  SchreierBasis B = schreier_basis(cs, T);

  CHECK(schreier_rewrite(cs, T, B, FreeWord{}).empty());

  FreeWord aaaa = parse_free_word("a a a a", {"a"});
  auto tokens = schreier_rewrite(cs, T, B, aaaa);
  REQUIRE(tokens.size() == 2);
  CHECK(tokens[0].index == 0);
  CHECK(tokens[0].sign == +1);
  CHECK(tokens[1].index == 0);
  CHECK(tokens[1].sign == +1);
  CHECK(evaluate_basis_tokens(B, tokens) == aaaa);

  CHECK_THROWS_AS(schreier_rewrite(cs, T, B, parse_free_word("a", {"a"})),
                  NotInSubgroup);
}

TEST_CASE("rewrite round-trips on sampled subgroup elements") {
  for (Problem p : {fixtures::ns_s3(false), fixtures::ns_s3(true)}) {
    CosetSpace cs = build_coset_space(p);
    SchreierTransversal T = build_transversal(cs);
    SchreierBasis B = schreier_basis(cs, T);
    Rng rng(501);
    for (int trial = 0; trial < 100; ++trial) {
      FreeWord h = random_subgroup_element(rng, cs, T.reps, 10);
      REQUIRE(in_subgroup(cs, h));
      CHECK(evaluate_basis_tokens(B, schreier_rewrite(cs, T, B, h)) == h);
    }
  }
  CosetSpace cs = build_coset_space(fixtures::ns_s3(true));
  SchreierTransversal T = build_transversal(cs);
  SchreierBasis B = schreier_basis(cs, T);
  CHECK_THROWS_AS(schreier_rewrite(cs, T, B, parse_free_word("b", {"a", "b"})),
                  NotInSubgroup);
}

TEST_CASE("universal extension verifies on seeded targets") {
  CosetSpace rank1 = build_coset_space(fixtures::ns_rank1());
  SchreierTransversal T1 = build_transversal(rank1);
  SchreierBasis B1 = schreier_basis(rank1, T1);
  PermGroup c2 = closure(2, {fixtures::perm({1, 0})}, 16);
  Report flip = verify_ns_universal(rank1, T1, B1, c2,
                                    {fixtures::perm({1, 0})}, 100, 11);
  for (const auto& check : flip.checks) {
    INFO(check.name << ": " << check.witness);
    CHECK(check.pass);
  }
  REQUIRE(flip.checks.size() == 3);
  CHECK(flip.checks[0].name == "projection_extends_alpha");
  CHECK(flip.checks[1].name == "tau_is_homomorphism");
  CHECK(flip.checks[2].name == "permutation_part_is_rho");

  CosetSpace cs = build_coset_space(fixtures::ns_s3(true));
  SchreierTransversal T = build_transversal(cs);
  SchreierBasis B = schreier_basis(cs, T);
  PermGroup s3 = closure(3, {fixtures::perm({1, 0, 2}), fixtures::perm({1, 2, 0})}, 16);
  Rng rng(502);
  for (int round = 0; round < 3; ++round) {
    std::vector<Permutation> alpha;
    for (int k = 0; k < B.rank(); ++k)
      alpha.push_back(s3.element(rng.below_int(s3.order())));
    Report r = verify_ns_universal(cs, T, B, s3, alpha, 60, rng.next());
    CHECK(r.all_pass());
  }
}
