#pragma once

#include <fstream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "freesub/action.hpp"
#include "freesub/errors.hpp"
#include "freesub/kurosh.hpp"
#include "freesub/perm.hpp"
#include "freesub/schreier.hpp"
#include "freesub/words.hpp"
#include "freesub/wreath.hpp"

namespace freesub {

using ordered_json = nlohmann::ordered_json;

namespace detail {

inline bool valid_generator_name(const std::string& s) {
  if (s.empty()) return false;
  auto alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  auto alnum = [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); };
  if (!alpha(s[0])) return false;
  for (char c : s)
    if (!alnum(c)) return false;
  return true;
}

inline Permutation parse_perm(const ordered_json& j, int degree,
                              const std::string& field) {
  if (!j.is_array() || static_cast<int>(j.size()) != degree)
    throw SchemaError(field, "expected an array of " + std::to_string(degree) +
                                 " integers");
  std::vector<int> images;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw SchemaError(field, "expected integers");
    images.push_back(v.get<int>());
  }
  try {
    return Permutation(std::move(images));
  } catch (const InvalidPermutation& e) {
    throw SchemaError(field, e.what());
  }
}

inline void check_keys(const ordered_json& j,
                       const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key)) throw SchemaError(key, "unknown field");
  }
}

}  // namespace detail

inline Problem parse_problem_json(const ordered_json& j) {
  if (!j.is_object()) throw SchemaError("document", "expected a JSON object");
  if (!j.contains("kind") || !j.at("kind").is_string())
    throw SchemaError("kind", "expected \"free_group\" or \"free_product\"");
  std::string kind = j.at("kind").get<std::string>();

  Problem p;
  if (!j.contains("degree") || !j.at("degree").is_number_integer() ||
      j.at("degree").get<int>() < 1)
    throw SchemaError("degree", "expected a positive integer");
  p.degree = j.at("degree").get<int>();

  if (kind == "free_group") {
    p.kind = ProblemKind::free_group;
    detail::check_keys(j, {"kind", "generators", "degree", "images", "subgroup"});
    if (!j.contains("generators") || !j.at("generators").is_array())
      throw SchemaError("generators", "expected an array of names");
    for (std::size_t i = 0; i < j.at("generators").size(); ++i) {
      const auto& g = j.at("generators")[i];
      if (!g.is_string() || !detail::valid_generator_name(g.get<std::string>()))
        throw SchemaError("generators[" + std::to_string(i) + "]",
                          "expected an identifier-style name");
      p.generators.push_back(g.get<std::string>());
    }
    std::set<std::string> names(p.generators.begin(), p.generators.end());
    if (names.size() != p.generators.size())
      throw SchemaError("generators", "names must be distinct");
    if (!j.contains("images") || !j.at("images").is_object())
      throw SchemaError("images", "expected an object keyed by generator");
    for (const auto& [key, value] : j.at("images").items()) {
      (void)value;
      if (!names.count(key)) throw SchemaError("images." + key, "unknown generator");
    }
    for (const std::string& name : p.generators) {
      if (!j.at("images").contains(name))
        throw SchemaError("images." + name, "missing image");
      p.images.push_back(
          detail::parse_perm(j.at("images").at(name), p.degree, "images." + name));
    }
  } else if (kind == "free_product") {
    p.kind = ProblemKind::free_product;
    detail::check_keys(j, {"kind", "factors", "degree", "images", "subgroup"});
    if (!j.contains("factors") || !j.at("factors").is_array() ||
        j.at("factors").empty())
      throw SchemaError("factors", "expected a nonempty array");
    for (std::size_t a = 0; a < j.at("factors").size(); ++a) {
      std::string field = "factors[" + std::to_string(a) + "]";
      const auto& jf = j.at("factors")[a];
      if (!jf.is_object()) throw SchemaError(field, "expected an object");
      detail::check_keys(jf, {"name", "table"});
      if (!jf.contains("name") || !jf.at("name").is_string() ||
          jf.at("name").get<std::string>().empty())
        throw SchemaError(field + ".name", "expected a nonempty string");
      if (!jf.contains("table") || !jf.at("table").is_array() ||
          jf.at("table").empty())
        throw SchemaError(field + ".table", "expected a nonempty square matrix");
      std::size_t order = jf.at("table").size();
      std::vector<std::vector<int>> table;
      for (const auto& row : jf.at("table")) {
        if (!row.is_array() || row.size() != order)
          throw SchemaError(field + ".table", "expected a square matrix");
        std::vector<int> r;
        for (const auto& v : row) {
          if (!v.is_number_integer())
            throw SchemaError(field + ".table", "expected integers");
          r.push_back(v.get<int>());
        }
        table.push_back(std::move(r));
      }
      try {
        p.factors.emplace_back(jf.at("name").get<std::string>(), std::move(table));
      } catch (const SchemaError& e) {
        throw SchemaError(field + ".table", e.detail);
      }
    }
    if (!j.contains("images") || !j.at("images").is_array() ||
        j.at("images").size() != p.factors.size())
      throw SchemaError("images", "expected one image table per factor");
    for (std::size_t a = 0; a < p.factors.size(); ++a) {
      std::string field = "images[" + std::to_string(a) + "]";
      const auto& ja = j.at("images")[a];
      if (!ja.is_array() ||
          static_cast<int>(ja.size()) != p.factors[a].order())
        throw SchemaError(field, "expected one permutation per factor element");
      std::vector<Permutation> ims;
      for (std::size_t k = 0; k < ja.size(); ++k)
        ims.push_back(detail::parse_perm(ja[k], p.degree,
                                         field + "[" + std::to_string(k) + "]"));
      validate_factor_hom(p.factors[a], ims);
      p.factor_images.push_back(std::move(ims));
    }
  } else {
    throw SchemaError("kind", "expected \"free_group\" or \"free_product\"");
  }

  if (!j.contains("subgroup") || !j.at("subgroup").is_array())
    throw SchemaError("subgroup", "expected an array of permutations");
  for (std::size_t i = 0; i < j.at("subgroup").size(); ++i)
    p.subgroup.push_back(detail::parse_perm(
        j.at("subgroup")[i], p.degree, "subgroup[" + std::to_string(i) + "]"));
  return p;
}

/// Parses and fully validates a problem file: schema, factor homomorphisms,
/// and membership of the subgroup generators in the image group.
inline Problem parse_problem(const std::string& path, const Caps& caps = {}) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("document", e.what());
  }
  Problem p = parse_problem_json(j);

  std::vector<Permutation> all_images = p.images;
  for (const auto& ims : p.factor_images)
    for (const Permutation& im : ims) all_images.push_back(im);
  PermGroup Q = closure(p.degree, all_images, caps.max_group_order);
  for (const Permutation& g : p.subgroup)
    if (!Q.contains(g))
      throw NotASubgroup("subgroup generator " + to_string(g) +
                         " lies outside the image group");
  return p;
}

// ---------------------------------------------------------------------------
// Report serialization
// ---------------------------------------------------------------------------

inline ordered_json checks_to_json(const Report& r) {
  ordered_json arr = ordered_json::array();
  for (const Check& c : r.checks) {
    ordered_json jc;
    jc["name"] = c.name;
    jc["pass"] = c.pass;
    jc["witness"] = c.witness;
    arr.push_back(std::move(jc));
  }
  return arr;
}

inline ordered_json ns_report_json(const CosetSpace& cs, const SchreierBasis& B,
                                   const Report& checks) {
  ordered_json j;
  j["basis"] = ordered_json::array();
  for (const auto& e : B.elements) {
    ordered_json je;
    je["word"] = to_string(e.word, cs.problem.generators);
    je["coset"] = e.coset;
    je["generator"] = cs.problem.generators[e.gen];
    j["basis"].push_back(std::move(je));
  }
  j["rank"] = B.rank();
  j["checks"] = checks_to_json(checks);
  return j;
}

inline ordered_json decomposition_json(const KuroshDecomposition& dec) {
  ordered_json j;
  j["alpha0"] = dec.alpha0;
  j["factors"] = ordered_json::array();
  for (const KuroshFactor& f : dec.factors) {
    ordered_json jf;
    jf["alpha"] = f.alpha;
    jf["u"] = to_string(f.u);
    jf["order"] = static_cast<int>(f.stab.size());
    jf["generators"] = ordered_json::array();
    for (const ProductWord& g : f.conj_gens)
      jf["generators"].push_back(to_string(g));
    j["factors"].push_back(std::move(jf));
  }
  j["free_basis"] = ordered_json::array();
  for (const ZEntry& z : dec.free_basis) {
    ordered_json jz;
    jz["word"] = to_string(z.word);
    jz["coset"] = z.coset;
    jz["alpha"] = z.alpha;
    j["free_basis"].push_back(std::move(jz));
  }
  ordered_json counts;
  counts["index"] = dec.index;
  counts["double_cosets"] = dec.double_cosets;
  counts["free_rank"] = dec.free_rank();
  j["counts"] = std::move(counts);
  return j;
}

inline ordered_json kurosh_system_json(const CosetSpace& cs,
                                       const KuroshSystem& ks,
                                       const Report& checks) {
  ordered_json j;
  j["alpha0"] = ks.alpha0;
  j["transversals"] = ordered_json::array();
  for (const auto& ta : ks.T) {
    ordered_json row = ordered_json::array();
    for (const ProductWord& w : ta) row.push_back(to_string(w));
    j["transversals"].push_back(std::move(row));
  }
  j["double_cosets"] = ordered_json::array();
  for (std::size_t a = 0; a < ks.D.size(); ++a) {
    ordered_json row = ordered_json::array();
    for (std::size_t d = 0; d < ks.D[a].size(); ++d) {
      ordered_json jd;
      jd["rep"] = to_string(ks.D[a][d]);
      jd["members"] = ks.dc_members[a][d];
      row.push_back(std::move(jd));
    }
    j["double_cosets"].push_back(std::move(row));
  }
  (void)cs;
  j["checks"] = checks_to_json(checks);
  return j;
}

template <class WordGroup>
ordered_json wreath_json(const WreathElement<WordGroup>& e,
                         const std::vector<std::string>& names) {
  ordered_json j;
  j["f"] = ordered_json::array();
  for (const auto& w : e.f) j["f"].push_back(to_string(w, names));
  j["p"] = e.p.images();
  return j;
}

inline ordered_json wreath_json(const WreathElement<ProductWordGroup>& e) {
  ordered_json j;
  j["f"] = ordered_json::array();
  for (const auto& w : e.f) j["f"].push_back(to_string(w));
  j["p"] = e.p.images();
  return j;
}

}  // namespace freesub
