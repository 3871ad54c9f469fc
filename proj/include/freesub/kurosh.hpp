#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
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

/**
 * Syllable-length data for a free-product coset space: per coset the
 * minimal syllable length and a canonical geodesic, and per factor the
 * double-coset partition with its lengths.
 */
struct SyllableMetrics {
  std::vector<int> coset_len;
  std::vector<ProductWord> geodesic;
  std::vector<std::vector<int>> dc_of;                    // [alpha][coset]
  std::vector<std::vector<std::vector<int>>> dc_members;  // [alpha][dc]
  std::vector<std::vector<int>> dc_len;                   // [alpha][dc]
};

/**
 * BFS over states (coset, last factor), stepping by nontrivial elements of a
 * factor different from the last.  Layer = syllable length; expansion in
 * (factor, element) order makes the first word reaching a coset its shortlex
 * canonical geodesic.  Double cosets are the coset orbits of each factor,
 * listed by least member.
 */
inline SyllableMetrics syllable_metrics(const CosetSpace& cs) {
  if (cs.is_free_group())
    throw WrongKind("syllable metrics require a free_product problem");
  int n = cs.size;
  int A = static_cast<int>(cs.problem.factors.size());
  SyllableMetrics m;
  m.coset_len.assign(n, -1);
  m.geodesic.assign(n, ProductWord{});
  m.coset_len[0] = 0;

  struct State {
    int coset;
    int last;  // factor of the final syllable; -1 at the start state
    ProductWord word;
  };
  std::vector<std::vector<bool>> seen(n, std::vector<bool>(A, false));
  std::vector<State> queue{{0, -1, ProductWord{}}};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    State st = queue[head];
    for (int b = 0; b < A; ++b) {
      if (b == st.last) continue;
      for (int k = 1; k < cs.problem.factors[b].order(); ++k) {
        int d = cs.factor_action[b][k][st.coset];
        if (seen[d][b]) continue;
        seen[d][b] = true;
        ProductWord w = st.word;
        w.syllables.push_back(FactorElement{b, k});
        if (m.coset_len[d] < 0) {
          m.coset_len[d] = static_cast<int>(w.syllables.size());
          m.geodesic[d] = w;
        }
        queue.push_back({d, b, std::move(w)});
      }
    }
  }

  m.dc_of.assign(A, std::vector<int>(n, -1));
  m.dc_members.resize(A);
  m.dc_len.resize(A);
  for (int a = 0; a < A; ++a) {
    // Orbits of the G_alpha action on cosets, found from each least
    // unassigned coset upward, so orbit order is least-member order.
    for (int c = 0; c < n; ++c) {
      if (m.dc_of[a][c] != -1) continue;
      int d = static_cast<int>(m.dc_members[a].size());
      std::vector<int> orbit{c};
      m.dc_of[a][c] = d;
      for (std::size_t h = 0; h < orbit.size(); ++h)
        for (int k = 1; k < cs.problem.factors[a].order(); ++k) {
          int img = cs.factor_action[a][k][orbit[h]];
          if (m.dc_of[a][img] == -1) {
            m.dc_of[a][img] = d;
            orbit.push_back(img);
          }
        }
      std::sort(orbit.begin(), orbit.end());
      int len = m.coset_len[orbit[0]];
      for (int mem : orbit) len = std::min(len, m.coset_len[mem]);
      m.dc_members[a].push_back(std::move(orbit));
      m.dc_len[a].push_back(len);
    }
  }
  return m;
}

/**
 * A Kurosh system: per factor alpha a transversal entry alpha(H_i) for
 * every coset, and per double coset its representative word alpha(HgG_a).
 * The construction below satisfies the five defining conditions plus
 * alpha(H) = 1; check_kurosh_axioms verifies them exhaustively.
 */
struct KuroshSystem {
  int alpha0 = 0;
  std::vector<std::vector<ProductWord>> T;                // [alpha][coset]
  std::vector<std::vector<ProductWord>> D;                // [alpha][dc]
  std::vector<std::vector<int>> dc_of;                    // [alpha][coset]
  std::vector<std::vector<std::vector<int>>> dc_members;  // [alpha][dc]
};

/**
 * Induction on double-coset length.  Length 0 (the double coset of H):
 * representative 1, and each member coset gets the least factor element
 * reaching it from H.  Length n: take the canonical geodesic g of the least
 * minimal-length member coset; it ends in a syllable of some factor b != a,
 * whose transversal entry at g's coset is already assigned and becomes both
 * the representative and the entry at that coset; the other member cosets
 * get the representative times the least factor element reaching them.
 */
inline KuroshSystem build_kurosh_system(const CosetSpace& cs,
                                        const SyllableMetrics& m, int alpha0) {
  if (cs.is_free_group())
    throw WrongKind("kurosh systems require a free_product problem");
  int n = cs.size;
  int A = static_cast<int>(cs.problem.factors.size());
  if (alpha0 < 0 || alpha0 >= A)
    throw FactorIndexError("alpha0 index " + std::to_string(alpha0) +
                           " out of range");
  KuroshSystem ks;
  ks.alpha0 = alpha0;
  ks.dc_of = m.dc_of;
  ks.dc_members = m.dc_members;
  ks.T.assign(A, std::vector<ProductWord>(n));
  std::vector<std::vector<bool>> t_set(A, std::vector<bool>(n, false));
  ks.D.resize(A);
  std::vector<std::vector<bool>> d_set(A);
  for (int a = 0; a < A; ++a) {
    ks.D[a].resize(m.dc_members[a].size());
    d_set[a].assign(m.dc_members[a].size(), false);
  }

  std::vector<std::tuple<int, int, int>> jobs;  // (dc_len, alpha, dc)
  for (int a = 0; a < A; ++a)
    for (std::size_t d = 0; d < m.dc_members[a].size(); ++d)
      jobs.emplace_back(m.dc_len[a][d], a, static_cast<int>(d));
  std::sort(jobs.begin(), jobs.end());

  auto least_step = [&](int a, int from, int to) {
    for (int k = 0; k < cs.problem.factors[a].order(); ++k)
      if (cs.factor_action[a][k][from] == to) return k;
    throw InternalInductionOrder("no factor element connects the member cosets");
  };

  for (auto [len, a, d] : jobs) {
    ProductWord rep;
    int base_coset;
    if (len == 0) {
      base_coset = 0;
    } else {
      int cg = -1;
      for (int mem : m.dc_members[a][d])
        if (m.coset_len[mem] == len) {
          cg = mem;
          break;
        }
      const ProductWord& g = m.geodesic[cg];
      int b = g.syllables.back().factor;
      if (b == a)
        throw InternalInductionOrder("geodesic of a minimal member ends in its own factor");
      if (!t_set[b][cg])
        throw InternalInductionOrder("transversal entry needed before assignment");
      rep = ks.T[b][cg];
      base_coset = cg;
    }
    ks.D[a][d] = rep;
    d_set[a][d] = true;
    for (int mem : m.dc_members[a][d]) {
      int k = least_step(a, base_coset, mem);
      ks.T[a][mem] =
          normalize_product(rep, product_syllable(a, k), cs.problem.factors);
      t_set[a][mem] = true;
    }
  }
  return ks;
}

/// Exhaustive verification of the five Kurosh-system conditions plus
/// triviality of every entry at coset 0.
inline Report check_kurosh_axioms(const CosetSpace& cs, const KuroshSystem& ks) {
  Report report;
  SyllableMetrics m = syllable_metrics(cs);
  int A = static_cast<int>(cs.problem.factors.size());
  const auto& tables = cs.problem.factors;

  bool ok = true;
  std::string witness;
  for (int a = 0; a < A && ok; ++a)
    for (int i = 0; i < cs.size && ok; ++i)
      if (!is_normal_form(ks.T[a][i]) || rho_of_word(cs, ks.T[a][i])[0] != i) {
        ok = false;
        witness = "entry (alpha=" + std::to_string(a) +
                  ", coset=" + std::to_string(i) + ")";
      }
  report.add("transversal_wellformed", ok, witness);

  ok = true;
  witness.clear();
  for (int a = 0; a < A && ok; ++a)
    for (std::size_t d = 0; d < ks.D[a].size() && ok; ++d) {
      int c = rho_of_word(cs, ks.D[a][d])[0];
      if (ks.T[a][c] != ks.D[a][d]) {
        ok = false;
        witness = "rep (alpha=" + std::to_string(a) + ", dc=" + std::to_string(d) + ")";
      }
    }
  report.add("rep_is_own_coset_entry", ok, witness);

  ok = true;
  witness.clear();
  for (int a = 0; a < A && ok; ++a)
    for (std::size_t d = 0; d < ks.D[a].size() && ok; ++d) {
      const ProductWord& u = ks.D[a][d];
      if (!u.is_identity() && u.syllables.back().factor == a) {
        ok = false;
        witness = "rep (alpha=" + std::to_string(a) + ", dc=" + std::to_string(d) + ")";
      }
    }
  report.add("rep_trivial_or_ends_elsewhere", ok, witness);

  ok = true;
  witness.clear();
  for (int a = 0; a < A && ok; ++a)
    for (std::size_t d = 0; d < ks.D[a].size() && ok; ++d) {
      ProductWord uinv = invert_product(ks.D[a][d], tables);
      for (int mem : ks.dc_members[a][d]) {
        ProductWord q = normalize_product(uinv, ks.T[a][mem], tables);
        if (q.syllables.size() > 1 ||
            (q.syllables.size() == 1 && q.syllables[0].factor != a)) {
          ok = false;
          witness = "entry (alpha=" + std::to_string(a) +
                    ", coset=" + std::to_string(mem) + ")";
          break;
        }
      }
    }
  report.add("entry_in_rep_factor_orbit", ok, witness);

  ok = true;
  witness.clear();
  for (int a = 0; a < A && ok; ++a)
    for (std::size_t d = 0; d < ks.D[a].size() && ok; ++d) {
      const ProductWord& u = ks.D[a][d];
      if (u.is_identity()) continue;
      int b = u.syllables.back().factor;
      int c = rho_of_word(cs, u)[0];
      if (ks.T[b][c] != u) {
        ok = false;
        witness = "rep (alpha=" + std::to_string(a) + ", dc=" + std::to_string(d) + ")";
      }
    }
  report.add("last_factor_entry_agrees", ok, witness);

  ok = true;
  witness.clear();
  for (int a = 0; a < A && ok; ++a)
    for (std::size_t d = 0; d < ks.D[a].size() && ok; ++d)
      if (static_cast<int>(ks.D[a][d].syllables.size()) != m.dc_len[a][d]) {
        ok = false;
        witness = "rep (alpha=" + std::to_string(a) + ", dc=" + std::to_string(d) + ")";
      }
  report.add("rep_length_is_dc_length", ok, witness);

  ok = true;
  witness.clear();
  for (int a = 0; a < A && ok; ++a)
    if (!ks.T[a][0].is_identity()) {
      ok = false;
      witness = "alpha=" + std::to_string(a);
    }
  report.add("entries_at_H_trivial", ok, witness);
  return report;
}

/**
 * The y and z element tables:
 *   y[i][a][x] = T_a(i) * x * T_a(i*rho(x))^-1, an element of H;
 *   z[i][a]    = T_a(i) * T_alpha0(i)^-1, an element of H.
 */
struct YZTable {
  std::vector<std::vector<std::vector<ProductWord>>> y;  // [coset][alpha][elem]
  std::vector<std::vector<ProductWord>> z;               // [coset][alpha]
};

inline YZTable yz_elements(const CosetSpace& cs, const KuroshSystem& ks) {
  const auto& tables = cs.problem.factors;
  int n = cs.size;
  int A = static_cast<int>(tables.size());
  YZTable t;
  t.y.assign(n, {});
  t.z.assign(n, {});
  for (int i = 0; i < n; ++i) {
    t.y[i].resize(A);
    t.z[i].resize(A);
    for (int a = 0; a < A; ++a) {
      t.y[i][a].resize(tables[a].order());
      for (int x = 0; x < tables[a].order(); ++x) {
        int j = cs.factor_action[a][x][i];
        t.y[i][a][x] = normalize_product(
            normalize_product(ks.T[a][i], product_syllable(a, x), tables),
            invert_product(ks.T[a][j], tables), tables);
      }
      t.z[i][a] = normalize_product(
          ks.T[a][i], invert_product(ks.T[ks.alpha0][i], tables), tables);
    }
  }
  return t;
}

/**
 * The decomposition of H: one conjugated-stabilizer factor per (factor,
 * double coset), trivial ones flagged, and the free part generated by the
 * nontrivial z elements.
 */
struct KuroshFactor {
  int alpha = 0;
  int dc = 0;
  ProductWord u;
  int u_coset = 0;
  std::vector<int> stab;               // G_alpha element indices, stab[0] = 0
  std::vector<ProductWord> conj_gens;  // u*x*u^-1 for x in stab, x nontrivial
  bool trivial() const { return stab.size() == 1; }
};

struct ZEntry {
  ProductWord word;
  int coset = 0;
  int alpha = 0;
};

struct KuroshDecomposition {
  int alpha0 = 0;
  int index = 0;
  std::vector<KuroshFactor> factors;  // factor-major, double-coset-minor
  std::vector<ZEntry> free_basis;     // coset-major, factor-minor
  std::vector<int> double_cosets;     // count per factor

  int free_rank() const { return static_cast<int>(free_basis.size()); }
  std::vector<int> nontrivial() const {
    std::vector<int> idx;
    for (std::size_t k = 0; k < factors.size(); ++k)
      if (!factors[k].trivial()) idx.push_back(static_cast<int>(k));
    return idx;
  }
};

inline KuroshDecomposition decompose(const CosetSpace& cs,
                                     const KuroshSystem& ks, const YZTable& yz) {
  const auto& tables = cs.problem.factors;
  int A = static_cast<int>(tables.size());
  KuroshDecomposition dec;
  dec.alpha0 = ks.alpha0;
  dec.index = cs.size;
  for (int a = 0; a < A; ++a) {
    dec.double_cosets.push_back(static_cast<int>(ks.D[a].size()));
    for (std::size_t d = 0; d < ks.D[a].size(); ++d) {
      KuroshFactor f;
      f.alpha = a;
      f.dc = static_cast<int>(d);
      f.u = ks.D[a][d];
      f.u_coset = rho_of_word(cs, f.u)[0];
      f.stab = stabilizer(cs.factor_action[a], f.u_coset);
      ProductWord uinv = invert_product(f.u, tables);
      for (int x : f.stab) {
        if (x == 0) continue;
        f.conj_gens.push_back(normalize_product(
            normalize_product(f.u, product_syllable(a, x), tables), uinv,
            tables));
      }
      dec.factors.push_back(std::move(f));
    }
  }
  std::map<ProductWord, std::pair<int, int>> first_seen;
  for (int i = 0; i < cs.size; ++i)
    for (int a = 0; a < A; ++a) {
      if (yz.z[i][a].is_identity()) continue;
      auto [it, fresh] = first_seen.try_emplace(yz.z[i][a], i, a);
      if (!fresh)
        throw Error("free-basis word " + to_string(yz.z[i][a]) +
                    " repeats at (coset=" + std::to_string(i) +
                    ", alpha=" + std::to_string(a) + ") and (coset=" +
                    std::to_string(it->second.first) + ", alpha=" +
                    std::to_string(it->second.second) + ")");
      dec.free_basis.push_back(ZEntry{yz.z[i][a], i, a});
    }
  return dec;
}

/**
 * The wreath extension over an arbitrary base: for every factor element x a
 * wreath element (f_x, rho(x)) with
 *   f_x(H_i) = psi(z_{i,a})^-1 * psi_u(y_{i,x}) * psi(z_{j,a}),  H_j = H_i x.
 * psi_u images are indexed by stabilizer position per nontrivial factor;
 * psi images by free-basis position.  Each per-factor map is verified to be
 * multiplicative on all pairs.
 */
template <BaseGroup B>
struct PsiSystem {
  B base;
  int points = 0;
  std::vector<std::vector<WreathElement<B>>> of_elem;  // [alpha][elem]

  WreathElement<B> operator()(const ProductWord& w) const {
    WreathElement<B> acc = w_identity(base, points);
    for (const FactorElement& s : w.syllables)
      acc = w_multiply(base, acc, of_elem[s.factor][s.elem]);
    return acc;
  }
};

template <BaseGroup B>
PsiSystem<B> build_psi(const CosetSpace& cs, const KuroshSystem& ks,
                       const YZTable&, const KuroshDecomposition& dec,
                       const B& base,
                       const std::vector<std::vector<typename B::Elem>>& psi_u,
                       const std::vector<typename B::Elem>& psi) {
  const auto& tables = cs.problem.factors;
  int n = cs.size;
  int A = static_cast<int>(tables.size());

  std::vector<int> nt = dec.nontrivial();
  if (psi_u.size() != nt.size())
    throw NotAHomomorphism("expected " + std::to_string(nt.size()) +
                           " factor homomorphisms, got " +
                           std::to_string(psi_u.size()));
  if (psi.size() != dec.free_basis.size())
    throw NotAHomomorphism("expected " + std::to_string(dec.free_basis.size()) +
                           " free-basis images, got " + std::to_string(psi.size()));
  // Validate each psi_u against the stabilizer's induced multiplication.
  for (std::size_t j = 0; j < nt.size(); ++j) {
    const KuroshFactor& f = dec.factors[nt[j]];
    const auto& im = psi_u[j];
    if (im.size() != f.stab.size())
      throw NotAHomomorphism("factor homomorphism " + std::to_string(j) +
                             " has wrong image count");
    SubCayley sub = subgroup_cayley(tables[f.alpha], f.stab, "stab");
    if (!base.equal(im[0], base.identity()))
      throw NotAHomomorphism("factor homomorphism " + std::to_string(j) +
                             " does not fix the identity");
    for (int a = 0; a < sub.group.order(); ++a)
      for (int b = 0; b < sub.group.order(); ++b)
        if (!base.equal(im[sub.group.mul(a, b)], base.multiply(im[a], im[b])))
          throw NotAHomomorphism("factor homomorphism " + std::to_string(j) +
                                 " fails at pair (" + std::to_string(a) + "," +
                                 std::to_string(b) + ")");
  }

  // Lookup tables: factor per (alpha, dc), its family position, the z image
  // per (coset, alpha), and the factor-element coordinate of each entry.
  std::map<std::pair<int, int>, int> factor_at;
  for (std::size_t k = 0; k < dec.factors.size(); ++k)
    factor_at[{dec.factors[k].alpha, dec.factors[k].dc}] = static_cast<int>(k);
  std::vector<int> family_pos(dec.factors.size(), -1);
  for (std::size_t j = 0; j < nt.size(); ++j) family_pos[nt[j]] = static_cast<int>(j);
  std::map<std::pair<int, int>, int> z_pos;
  for (std::size_t k = 0; k < dec.free_basis.size(); ++k)
    z_pos[{dec.free_basis[k].coset, dec.free_basis[k].alpha}] = static_cast<int>(k);
  auto psi_z = [&](int i, int a) -> typename B::Elem {
    auto it = z_pos.find({i, a});
    return it == z_pos.end() ? base.identity() : psi[it->second];
  };
  // coord[a][i]: the c with T_a(i) = u * c, c in G_alpha.
  std::vector<std::vector<int>> coord(A, std::vector<int>(n, 0));
  for (int a = 0; a < A; ++a)
    for (int i = 0; i < n; ++i) {
      const ProductWord& u = ks.D[a][ks.dc_of[a][i]];
      ProductWord q =
          normalize_product(invert_product(u, tables), ks.T[a][i], tables);
      if (q.is_identity())
        coord[a][i] = 0;
      else if (q.syllables.size() == 1 && q.syllables[0].factor == a)
        coord[a][i] = q.syllables[0].elem;
      else
        throw FactorElementNotLocated("entry (alpha=" + std::to_string(a) +
                                      ", coset=" + std::to_string(i) +
                                      ") is not in its representative's orbit");
    }

  PsiSystem<B> ps{base, n, {}};
  ps.of_elem.resize(A);
  for (int a = 0; a < A; ++a) {
    const CayleyGroup& G = tables[a];
    for (int x = 0; x < G.order(); ++x) {
      WreathElement<B> e;
      e.p = cs.factor_action[a][x];
      e.f.reserve(n);
      for (int i = 0; i < n; ++i) {
        int j = e.p[i];
        const KuroshFactor& f = dec.factors[factor_at.at({a, ks.dc_of[a][i]})];
        int c = G.mul(G.mul(coord[a][i], x), G.inv(coord[a][j]));
        auto pos = std::lower_bound(f.stab.begin(), f.stab.end(), c);
        if (pos == f.stab.end() || *pos != c)
          throw FactorElementNotLocated(
              "y element at (alpha=" + std::to_string(a) + ", coset=" +
              std::to_string(i) + ", x=" + std::to_string(x) +
              ") does not stabilize its representative coset");
        typename B::Elem mid =
            f.trivial() ? base.identity()
                        : psi_u[family_pos[factor_at.at({a, ks.dc_of[a][i]})]]
                               [pos - f.stab.begin()];
        e.f.push_back(base.multiply(
            base.multiply(base.invert(psi_z(i, a)), mid), psi_z(j, a)));
      }
      ps.of_elem[a].push_back(std::move(e));
    }
    for (int x1 = 0; x1 < G.order(); ++x1)
      for (int x2 = 0; x2 < G.order(); ++x2)
        if (!w_equal(base,
                     w_multiply(base, ps.of_elem[a][x1], ps.of_elem[a][x2]),
                     ps.of_elem[a][G.mul(x1, x2)]))
          throw NotAHomomorphism("wreath extension not multiplicative at "
                                 "(alpha=" + std::to_string(a) + ", " +
                                 std::to_string(x1) + "," + std::to_string(x2) +
                                 ")");
  }
  return ps;
}

/// The identity instantiation: factor images are the conjugated stabilizer
/// elements themselves, free-basis images the z words themselves.  The
/// resulting extension lands back in H, componentwise.
inline std::pair<std::vector<std::vector<ProductWord>>, std::vector<ProductWord>>
identity_instantiation(const KuroshDecomposition& dec) {
  std::vector<std::vector<ProductWord>> psi_u;
  for (int k : dec.nontrivial()) {
    const KuroshFactor& f = dec.factors[k];
    std::vector<ProductWord> im{ProductWord{}};
    for (const ProductWord& g : f.conj_gens) im.push_back(g);
    psi_u.push_back(std::move(im));
  }
  std::vector<ProductWord> psi;
  for (const ZEntry& z : dec.free_basis) psi.push_back(z.word);
  return {std::move(psi_u), std::move(psi)};
}

/// One step of a rewritten subgroup word: a z element or its inverse
/// (free part), or a y element (factor part), with provenance.
struct KuroshToken {
  enum class Kind { free_part, factor_part };
  Kind kind = Kind::free_part;
  int coset = 0;
  int alpha = 0;
  int elem = 0;  // factor_part only
  int sign = +1; // free_part only
};

/**
 * Rewrites h in H over the decomposition generators: per syllable x in
 * G_alpha read at coset H_i with H_j = H_i x, the contribution is
 * z_{i,a}^-1 * y_{i,x} * z_{j,a}; identity contributions are omitted.
 * Evaluating the tokens reproduces h exactly.
 */
inline std::vector<KuroshToken> kurosh_rewrite(const CosetSpace& cs,
                                               const KuroshSystem& ks,
                                               const YZTable& yz,
                                               const ProductWord& h) {
  if (!in_subgroup(cs, h))
    throw NotInSubgroup("word " + to_string(h) + " is not in the subgroup");
  (void)ks;
  std::vector<KuroshToken> tokens;
  int c = 0;
  for (const FactorElement& s : h.syllables) {
    int j = cs.factor_action[s.factor][s.elem][c];
    if (!yz.z[c][s.factor].is_identity())
      tokens.push_back({KuroshToken::Kind::free_part, c, s.factor, 0, -1});
    if (!yz.y[c][s.factor][s.elem].is_identity())
      tokens.push_back({KuroshToken::Kind::factor_part, c, s.factor, s.elem, +1});
    if (!yz.z[j][s.factor].is_identity())
      tokens.push_back({KuroshToken::Kind::free_part, j, s.factor, 0, +1});
    c = j;
  }
  return tokens;
}

inline ProductWord evaluate_kurosh_tokens(const YZTable& yz,
                                          const std::vector<KuroshToken>& tokens,
                                          const std::vector<CayleyGroup>& tables) {
  ProductWord acc;
  for (const KuroshToken& t : tokens) {
    ProductWord w = t.kind == KuroshToken::Kind::free_part
                        ? yz.z[t.coset][t.alpha]
                        : yz.y[t.coset][t.alpha][t.elem];
    if (t.kind == KuroshToken::Kind::free_part && t.sign < 0)
      w = invert_product(w, tables);
    acc = normalize_product(acc, w, tables);
  }
  return acc;
}

/**
 * Universal-property harness for the decomposition: builds the wreath
 * extension over K from user-supplied factor and free-basis images and
 * checks the defining identities exactly where the index set is finite,
 * multiplicativity on sampled pairs, and the functoriality square under a
 * sampled base automorphism.
 */
inline Report verify_kurosh_universal(
    const CosetSpace& cs, const KuroshSystem& ks, const YZTable& yz,
    const KuroshDecomposition& dec, const PermGroup& K,
    const std::vector<std::vector<Permutation>>& psi_u,
    const std::vector<Permutation>& psi, int samples, uint64_t seed) {
  Report report;
  const auto& tables = cs.problem.factors;
  int A = static_cast<int>(tables.size());
  PermBaseGroup kbase{K.degree()};
  PsiSystem<PermBaseGroup> Psi =
      build_psi(cs, ks, yz, dec, kbase, psi_u, psi);
  std::map<std::pair<int, int>, int> z_pos;
  for (std::size_t k = 0; k < dec.free_basis.size(); ++k)
    z_pos[{dec.free_basis[k].coset, dec.free_basis[k].alpha}] = static_cast<int>(k);
  auto psi_z = [&](int i, int a) {
    auto it = z_pos.find({i, a});
    return it == z_pos.end() ? Permutation::identity(K.degree()) : psi[it->second];
  };

  {
    bool ok = true;
    std::string witness;
    for (int a = 0; a < A && ok; ++a)
      for (int i = 0; i < cs.size && ok; ++i)
        if (Psi(ks.T[a][i]).f[0] != psi_z(i, a)) {
          ok = false;
          witness = "entry (alpha=" + std::to_string(a) +
                    ", coset=" + std::to_string(i) + ")";
        }
    report.add("transversal_coset0_component", ok, witness);
  }
  {
    bool ok = true;
    std::string witness;
    std::vector<int> nt = dec.nontrivial();
    for (std::size_t j = 0; j < nt.size() && ok; ++j) {
      const KuroshFactor& f = dec.factors[nt[j]];
      for (std::size_t p = 0; p < f.stab.size() && ok; ++p) {
        ProductWord h = p == 0 ? ProductWord{} : f.conj_gens[p - 1];
        if (project_i(kbase, Psi(h), 0) != psi_u[j][p]) {
          ok = false;
          witness = "factor (alpha=" + std::to_string(f.alpha) +
                    ", dc=" + std::to_string(f.dc) + ") element " +
                    std::to_string(f.stab[p]);
        }
      }
    }
    report.add("factor_projection", ok, witness);
  }
  {
    bool ok = true;
    std::string witness;
    for (std::size_t k = 0; k < dec.free_basis.size() && ok; ++k)
      if (project_i(kbase, Psi(dec.free_basis[k].word), 0) != psi[k]) {
        ok = false;
        witness = "free-basis word " + to_string(dec.free_basis[k].word);
      }
    report.add("free_basis_projection", ok, witness);
  }
  {
    Rng rng(seed);
    bool ok = true;
    std::string witness;
    for (int s = 0; s < samples && ok; ++s) {
      ProductWord w = random_product_word(rng, tables, 6);
      ProductWord v = random_product_word(rng, tables, 6);
      auto lhs = Psi(normalize_product(w, v, tables));
      auto rhs = w_multiply(kbase, Psi(w), Psi(v));
      if (!w_equal(kbase, lhs, rhs)) {
        ok = false;
        witness = "pair (" + to_string(w) + ", " + to_string(v) + ")";
      }
    }
    report.add("psi_homomorphism", ok, witness);
  }
  {
    Rng rng(seed + 1);
    int kidx = static_cast<int>(rng.below(static_cast<uint64_t>(K.order())));
    const Permutation& conj = K.element(kidx);
    auto gamma = [&](const Permutation& p) {
      return compose(compose(conj.inverse(), p), conj);
    };
    std::vector<std::vector<Permutation>> psi_u2;
    for (const auto& im : psi_u) {
      std::vector<Permutation> im2;
      for (const Permutation& p : im) im2.push_back(gamma(p));
      psi_u2.push_back(std::move(im2));
    }
    std::vector<Permutation> psi2;
    for (const Permutation& p : psi) psi2.push_back(gamma(p));
    PsiSystem<PermBaseGroup> Psi2 =
        build_psi(cs, ks, yz, dec, kbase, psi_u2, psi2);
    bool ok = true;
    std::string witness;
    for (int s = 0; s < samples && ok; ++s) {
      ProductWord h = random_subgroup_element(rng, cs, ks.T[ks.alpha0], 6);
      Permutation lhs = gamma(project_i(kbase, Psi(h), 0));
      Permutation rhs = project_i(kbase, Psi2(h), 0);
      if (lhs != rhs) {
        ok = false;
        witness = "subgroup word " + to_string(h);
      }
    }
    report.add("functoriality_square", ok, witness);
  }
  return report;
}

}  // namespace freesub
