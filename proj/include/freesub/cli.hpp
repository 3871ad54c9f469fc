#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "freesub/action.hpp"
#include "freesub/errors.hpp"
#include "freesub/fingrp.hpp"
#include "freesub/kurosh.hpp"
#include "freesub/problem_io.hpp"
#include "freesub/report.hpp"
#include "freesub/rng.hpp"
#include "freesub/schreier.hpp"
#include "freesub/words.hpp"
#include "freesub/wreath.hpp"

namespace freesub {

struct Config {
  Caps caps;
  uint64_t seed = 0;
  int samples = 200;
  int alpha0 = 0;
  std::string format = "text";   // "json" or "text"
  std::size_t hom_limit = 10000; // enumerate_homs truncation
};

struct CommandResult {
  int exit_code = 0;
  std::string output;
};

inline std::string render_checks_text(const Report& r) {
  std::string out;
  int failed = 0;
  for (const Check& c : r.checks) {
    if (c.pass) {
      out += "PASS " + c.name + "\n";
    } else {
      out += "FAIL " + c.name + (c.witness.empty() ? "" : ": " + c.witness) + "\n";
      ++failed;
    }
  }
  int total = static_cast<int>(r.checks.size());
  if (failed == 0)
    out += "all checks passed (" + std::to_string(total) + " checks)\n";
  else
    out += std::to_string(failed) + " of " + std::to_string(total) +
           " checks failed\n";
  return out;
}

inline std::string render_report(const Report& r, const std::string& format) {
  if (format == "json") {
    ordered_json j;
    j["checks"] = checks_to_json(r);
    return j.dump(2) + "\n";
  }
  return render_checks_text(r);
}

namespace detail {

inline PermGroup pick_target_group(Rng& rng) {
  if (rng.below(2) == 0)
    return closure(2, {Permutation({1, 0})}, 16);
  return closure(3, {Permutation({1, 0, 2}), Permutation({1, 2, 0})}, 16);
}

inline bool prefix_closed(const CosetSpace& cs, const SchreierTransversal& T) {
  for (const FreeWord& rep : T.reps) {
    FreeWord prefix;
    for (const Letter& l : rep.letters) {
      prefix.letters.push_back(l);
      int c = rho_of_word(cs, prefix)[0];
      if (T.reps[c] != prefix) return false;
    }
  }
  return true;
}

/// Structural checks shared by ns verify and the test suites.
inline Report ns_structural_report(const CosetSpace& cs,
                                   const SchreierTransversal& T,
                                   const SchreierBasis& B) {
  Report r;
  r.add("transversal_prefix_closed", prefix_closed(cs, T));
  int n = cs.size;
  int m = static_cast<int>(cs.problem.generators.size());
  r.add("basis_count_formula", B.rank() == n * (m - 1) + 1,
        "rank " + std::to_string(B.rank()) + " vs " +
            std::to_string(n * (m - 1) + 1));
  bool member = true;
  for (const auto& e : B.elements)
    if (!in_subgroup(cs, e.word)) member = false;
  r.add("basis_membership", member);
  bool distinct = true;
  for (std::size_t i = 0; i < B.elements.size() && distinct; ++i)
    for (std::size_t k = i + 1; k < B.elements.size(); ++k)
      if (B.elements[i].word == B.elements[k].word) {
        distinct = false;
        break;
      }
  r.add("basis_distinct", distinct);
  return r;
}

inline std::string ns_basis_text(const CosetSpace& cs, const SchreierBasis& B,
                                 const Report& checks) {
  std::string out;
  for (const auto& e : B.elements)
    out += "basis " + to_string(e.word, cs.problem.generators) + " (coset " +
           std::to_string(e.coset) + ", generator " +
           cs.problem.generators[e.gen] + ")\n";
  out += "rank " + std::to_string(B.rank()) + "\n";
  out += render_checks_text(checks);
  return out;
}

inline std::string decomposition_text(const KuroshDecomposition& dec) {
  std::string out;
  out += "index " + std::to_string(dec.index) + "\n";
  for (const KuroshFactor& f : dec.factors) {
    out += "factor alpha=" + std::to_string(f.alpha) + " u=" + to_string(f.u) +
           " order=" + std::to_string(f.stab.size()) + " generators=[";
    for (std::size_t i = 0; i < f.conj_gens.size(); ++i)
      out += (i ? ", " : "") + to_string(f.conj_gens[i]);
    out += "]\n";
  }
  for (const ZEntry& z : dec.free_basis)
    out += "free-basis " + to_string(z.word) + " (coset " +
           std::to_string(z.coset) + ", alpha " + std::to_string(z.alpha) +
           ")\n";
  out += "free rank " + std::to_string(dec.free_rank()) + "\n";
  std::string dc;
  for (std::size_t a = 0; a < dec.double_cosets.size(); ++a)
    dc += (a ? "," : "") + std::to_string(dec.double_cosets[a]);
  out += "double cosets [" + dc + "]\n";
  return out;
}

inline std::string kurosh_system_text(const KuroshSystem& ks,
                                      const Report& checks) {
  std::string out;
  out += "alpha0 " + std::to_string(ks.alpha0) + "\n";
  for (std::size_t a = 0; a < ks.T.size(); ++a)
    for (std::size_t i = 0; i < ks.T[a].size(); ++i)
      out += "entry alpha=" + std::to_string(a) + " coset=" + std::to_string(i) +
             " word=" + to_string(ks.T[a][i]) + "\n";
  for (std::size_t a = 0; a < ks.D.size(); ++a)
    for (std::size_t d = 0; d < ks.D[a].size(); ++d) {
      out += "rep alpha=" + std::to_string(a) + " dc=" + std::to_string(d) +
             " word=" + to_string(ks.D[a][d]) + " members=[";
      for (std::size_t k = 0; k < ks.dc_members[a][d].size(); ++k)
        out += (k ? "," : "") + std::to_string(ks.dc_members[a][d][k]);
      out += "]\n";
    }
  out += render_checks_text(checks);
  return out;
}

struct KuroshContext {
  CosetSpace cs;
  SyllableMetrics metrics;
  KuroshSystem ks;
};

inline KuroshContext make_kurosh_context(const Problem& p, const Config& cfg) {
  if (p.kind != ProblemKind::free_product)
    throw WrongKind("command requires a free_product problem");
  KuroshContext ctx;
  ctx.cs = build_coset_space(p, cfg.caps);
  ctx.metrics = syllable_metrics(ctx.cs);
  ctx.ks = build_kurosh_system(ctx.cs, ctx.metrics, cfg.alpha0);
  return ctx;
}

inline CosetSpace make_free_context(const Problem& p, const Config& cfg) {
  if (p.kind != ProblemKind::free_group)
    throw WrongKind("command requires a free_group problem");
  return build_coset_space(p, cfg.caps);
}

}  // namespace detail

/**
 * Executes one CLI command against a problem file and renders its output.
 * Commands: check, ns-basis, ns-rewrite, ns-verify, kurosh-system,
 * kurosh-decompose, kurosh-rewrite, kurosh-verify, embed.  Exit code 0 on
 * success or all checks passing, 1 on a failed verification check; input
 * errors surface as exceptions, which the binary maps to exit code 2.
 */
inline CommandResult dispatch(const std::string& command,
                              const std::string& problem_path,
                              const std::string& word_arg, const Config& cfg) {
  Problem p = parse_problem(problem_path, cfg.caps);

  if (command == "check") {
    build_coset_space(p, cfg.caps);  // index caps and subgroup revalidation
    Report empty;
    return {0, render_report(empty, cfg.format)};
  }

  if (command == "ns-basis" || command == "ns-rewrite" || command == "ns-verify") {
    CosetSpace cs = detail::make_free_context(p, cfg);
    SchreierTransversal T = build_transversal(cs);
    SchreierBasis B = schreier_basis(cs, T);

    if (command == "ns-basis") {
      Report empty;
      if (cfg.format == "json")
        return {0, ns_report_json(cs, B, empty).dump(2) + "\n"};
      return {0, detail::ns_basis_text(cs, B, empty)};
    }

    if (command == "ns-rewrite") {
      FreeWord h = parse_free_word(word_arg, cs.problem.generators);
      std::vector<BasisToken> tokens = schreier_rewrite(cs, T, B, h);
      FreeWord eval = evaluate_basis_tokens(B, tokens);
      Report r;
      r.add("rewrite_roundtrip", eval == h,
            "evaluates to " + to_string(eval, cs.problem.generators));
      if (cfg.format == "json") {
        ordered_json j;
        j["word"] = to_string(h, cs.problem.generators);
        j["tokens"] = ordered_json::array();
        for (const BasisToken& t : tokens) {
          ordered_json jt;
          jt["index"] = t.index;
          jt["sign"] = t.sign;
          jt["word"] = to_string(B.elements[t.index].word, cs.problem.generators);
          j["tokens"].push_back(std::move(jt));
        }
        j["checks"] = checks_to_json(r);
        return {r.all_pass() ? 0 : 1, j.dump(2) + "\n"};
      }
      std::string out;
      for (const BasisToken& t : tokens)
        out += "token " + std::to_string(t.index) + (t.sign > 0 ? " +" : " -") +
               " " + to_string(B.elements[t.index].word, cs.problem.generators) +
               "\n";
      out += render_checks_text(r);
      return {r.all_pass() ? 0 : 1, out};
    }

    // ns-verify
    Rng rng(cfg.seed);
    PermGroup K = detail::pick_target_group(rng);
    std::vector<Permutation> alpha;
    for (int i = 0; i < B.rank(); ++i)
      alpha.push_back(K.element(static_cast<int>(rng.below(K.order()))));
    Report r = detail::ns_structural_report(cs, T, B);
    Report u = verify_ns_universal(cs, T, B, K, alpha, cfg.samples, rng.next());
    for (Check& c : u.checks) r.checks.push_back(std::move(c));
    if (cfg.format == "json")
      return {r.all_pass() ? 0 : 1, ns_report_json(cs, B, r).dump(2) + "\n"};
    return {r.all_pass() ? 0 : 1, detail::ns_basis_text(cs, B, r)};
  }

  if (command == "kurosh-system" || command == "kurosh-decompose" ||
      command == "kurosh-rewrite" || command == "kurosh-verify") {
    detail::KuroshContext ctx = detail::make_kurosh_context(p, cfg);
    Report axioms = check_kurosh_axioms(ctx.cs, ctx.ks);

    if (command == "kurosh-system") {
      if (cfg.format == "json")
        return {axioms.all_pass() ? 0 : 1,
                kurosh_system_json(ctx.cs, ctx.ks, axioms).dump(2) + "\n"};
      return {axioms.all_pass() ? 0 : 1,
              detail::kurosh_system_text(ctx.ks, axioms)};
    }

    YZTable yz = yz_elements(ctx.cs, ctx.ks);
    KuroshDecomposition dec = decompose(ctx.cs, ctx.ks, yz);

    if (command == "kurosh-decompose") {
      if (cfg.format == "json")
        return {0, decomposition_json(dec).dump(2) + "\n"};
      return {0, detail::decomposition_text(dec)};
    }

    if (command == "kurosh-rewrite") {
      ProductWord h = parse_product_word(word_arg, ctx.cs.problem.factors);
      std::vector<KuroshToken> tokens = kurosh_rewrite(ctx.cs, ctx.ks, yz, h);
      ProductWord eval =
          evaluate_kurosh_tokens(yz, tokens, ctx.cs.problem.factors);
      Report r;
      r.add("rewrite_roundtrip", eval == h, "evaluates to " + to_string(eval));
      if (cfg.format == "json") {
        ordered_json j;
        j["word"] = to_string(h);
        j["tokens"] = ordered_json::array();
        for (const KuroshToken& t : tokens) {
          ordered_json jt;
          jt["kind"] =
              t.kind == KuroshToken::Kind::free_part ? "free" : "factor";
          jt["coset"] = t.coset;
          jt["alpha"] = t.alpha;
          if (t.kind == KuroshToken::Kind::factor_part)
            jt["elem"] = t.elem;
          else
            jt["sign"] = t.sign;
          j["tokens"].push_back(std::move(jt));
        }
        j["checks"] = checks_to_json(r);
        return {r.all_pass() ? 0 : 1, j.dump(2) + "\n"};
      }
      std::string out;
      for (const KuroshToken& t : tokens) {
        if (t.kind == KuroshToken::Kind::free_part)
          out += "token z coset=" + std::to_string(t.coset) +
                 " alpha=" + std::to_string(t.alpha) +
                 (t.sign > 0 ? " +" : " -") + "\n";
        else
          out += "token y coset=" + std::to_string(t.coset) +
                 " alpha=" + std::to_string(t.alpha) +
                 " elem=" + std::to_string(t.elem) + "\n";
      }
      out += render_checks_text(r);
      return {r.all_pass() ? 0 : 1, out};
    }

    // kurosh-verify
    Rng rng(cfg.seed);
    PermGroup K = detail::pick_target_group(rng);
    std::vector<std::vector<Permutation>> psi_u;
    for (int k : dec.nontrivial()) {
      const KuroshFactor& f = dec.factors[k];
      SubCayley sub =
          subgroup_cayley(ctx.cs.problem.factors[f.alpha], f.stab, "stab");
      auto homs = enumerate_homs(sub.group, K, cfg.hom_limit,
                                 cfg.caps.max_factor_order);
      const auto& im = homs[rng.below(homs.size())];
      std::vector<Permutation> images;
      for (int e : im) images.push_back(K.element(e));
      psi_u.push_back(std::move(images));
    }
    std::vector<Permutation> psi;
    for (int i = 0; i < dec.free_rank(); ++i)
      psi.push_back(K.element(static_cast<int>(rng.below(K.order()))));
    Report r = axioms;
    Report u = verify_kurosh_universal(ctx.cs, ctx.ks, yz, dec, K, psi_u, psi,
                                       cfg.samples, rng.next());
    for (Check& c : u.checks) r.checks.push_back(std::move(c));
    return {r.all_pass() ? 0 : 1, render_report(r, cfg.format)};
  }

  if (command == "embed") {
    if (p.kind == ProblemKind::free_group) {
      CosetSpace cs = detail::make_free_context(p, cfg);
      SchreierTransversal T = build_transversal(cs);
      FreeWord g = parse_free_word(word_arg, cs.problem.generators);
      auto e = standard_embed(cs, T.reps, g);
      if (cfg.format == "json")
        return {0, wreath_json(e, cs.problem.generators).dump(2) + "\n"};
      std::string out;
      for (int i = 0; i < e.points(); ++i)
        out += "f[" + std::to_string(i) + "] = " +
               to_string(e.f[i], cs.problem.generators) + "\n";
      out += "p = " + to_string(e.p) + "\n";
      return {0, out};
    }
    detail::KuroshContext ctx = detail::make_kurosh_context(p, cfg);
    ProductWord g = parse_product_word(word_arg, ctx.cs.problem.factors);
    auto e = standard_embed(ctx.cs, ctx.ks.T[ctx.ks.alpha0], g);
    if (cfg.format == "json") return {0, wreath_json(e).dump(2) + "\n"};
    std::string out;
    for (int i = 0; i < e.points(); ++i)
      out += "f[" + std::to_string(i) + "] = " + to_string(e.f[i]) + "\n";
    out += "p = " + to_string(e.p) + "\n";
    return {0, out};
  }

  throw Error("unknown command " + command);
}

}  // namespace freesub
