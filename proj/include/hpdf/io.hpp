#pragma once

#include <cctype>
#include <fstream>
#include <json.hpp>

#include "difference.hpp"
#include "group.hpp"
#include "params.hpp"

// JSON file formats and the group-recipe grammar.
//
// Group file:   {"order": v, "labels": [...], "table": [[...], ...],
//                "descriptor": "..."}; identity must be index 0 and the loader
//                rejects any table that fails validation.
// Family file:  {"group": <group object | recipe string>, "blocks": [[...]]}.
// ParamSet:     {"v": ..., "K": [[size, mult], ...] | [size, ...], "lambda": ...}.
//
// Recipe grammar:
//   cyclic(n) | dihedral(2n) | dicyclic(4n) | product(r1,r2)
//   | semidirect(m,n,r) | sl23 | file:<path>

namespace hpdf {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Groups
// ---------------------------------------------------------------------------

inline json group_to_json(const FiniteGroup& G) {
  json table = json::array();
  for (int i = 0; i < G.order(); ++i) {
    json row = json::array();
    for (int j = 0; j < G.order(); ++j) row.push_back(G.op(i, j));
    table.push_back(std::move(row));
  }
  return json{{"order", G.order()},
              {"labels", G.labels()},
              {"table", std::move(table)},
              {"descriptor", G.descriptor()}};
}

inline FiniteGroup group_from_json(const json& j) {
  if (!j.is_object() || !j.contains("order") || !j.contains("table"))
    throw std::runtime_error("group json must be an object with \"order\" and \"table\"");
  const int v = j.at("order").get<int>();
  if (v < 1) throw std::runtime_error("group json: order must be >= 1");
  const json& t = j.at("table");
  if (!t.is_array() || t.size() != static_cast<size_t>(v))
    throw std::runtime_error("group json: table must be a v x v array");
  std::vector<int> flat;
  flat.reserve(static_cast<size_t>(v) * v);
  for (const json& row : t) {
    if (!row.is_array() || row.size() != static_cast<size_t>(v))
      throw std::runtime_error("group json: table must be a v x v array");
    for (const json& x : row) flat.push_back(x.get<int>());
  }
  const ValidationReport rep = validate_table(v, flat);
  if (!rep.ok()) throw std::runtime_error("group json rejected: " + rep.summary());

  std::vector<std::string> labels;
  if (j.contains("labels")) {
    labels = j.at("labels").get<std::vector<std::string>>();
    if (labels.size() != static_cast<size_t>(v))
      throw std::runtime_error("group json: label count must equal order");
  } else {
    for (int i = 0; i < v; ++i) labels.push_back(std::to_string(i));
  }
  std::string descriptor = j.value("descriptor", std::string("file"));
  return FiniteGroup(v, std::move(flat), std::move(labels), std::move(descriptor));
}

inline void save_group(const FiniteGroup& G, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << group_to_json(G).dump(1) << '\n';
}

inline FiniteGroup load_group(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  json j;
  in >> j;
  FiniteGroup G = group_from_json(j);
  if (G.descriptor() == "file") {
    return FiniteGroup(G.order(), G.flat_table(), G.labels(), "file:" + path);
  }
  return G;
}

// ---------------------------------------------------------------------------
// Recipes
// ---------------------------------------------------------------------------

namespace detail {

struct RecipeParser {
  const std::string& text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c))
      throw std::invalid_argument("recipe parse error: expected '" + std::string(1, c) +
                                  "' at position " + std::to_string(pos) + " in \"" + text + "\"");
  }
  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (start == pos)
      throw std::invalid_argument("recipe parse error: expected a name at position " +
                                  std::to_string(pos) + " in \"" + text + "\"");
    return text.substr(start, pos - start);
  }
  long long integer() {
    skip_ws();
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos || (text[start] == '-' && pos == start + 1))
      throw std::invalid_argument("recipe parse error: expected an integer at position " +
                                  std::to_string(start) + " in \"" + text + "\"");
    return std::stoll(text.substr(start, pos - start));
  }

  FiniteGroup parse() {
    skip_ws();
    if (text.compare(pos, 5, "file:") == 0) {
      std::string path = text.substr(pos + 5);
      while (!path.empty() && std::isspace(static_cast<unsigned char>(path.back())))
        path.pop_back();
      pos = text.size();
      return load_group(path);
    }
    const std::string name = ident();
    if (name == "sl23") return make_sl23();
    expect('(');
    if (name == "cyclic") {
      const long long n = integer();
      expect(')');
      return make_cyclic(static_cast<int>(n));
    }
    if (name == "dihedral") {
      const long long n = integer();
      expect(')');
      return make_dihedral(static_cast<int>(n));
    }
    if (name == "dicyclic") {
      const long long n = integer();
      expect(')');
      return make_dicyclic(static_cast<int>(n));
    }
    if (name == "product") {
      FiniteGroup a = parse();
      expect(',');
      FiniteGroup b = parse();
      expect(')');
      return make_direct_product(a, b);
    }
    if (name == "semidirect") {
      const long long m = integer();
      expect(',');
      const long long n = integer();
      expect(',');
      const long long r = integer();
      expect(')');
      return make_semidirect_cyclic(static_cast<int>(m), static_cast<int>(n),
                                    static_cast<int>(r));
    }
    throw std::invalid_argument("recipe parse error: unknown constructor \"" + name + "\"");
  }
};

}  // namespace detail

inline FiniteGroup parse_group_recipe(const std::string& text) {
  detail::RecipeParser p{text};
  FiniteGroup G = p.parse();
  p.skip_ws();
  if (p.pos != text.size())
    throw std::invalid_argument("recipe parse error: trailing input at position " +
                                std::to_string(p.pos) + " in \"" + text + "\"");
  return G;
}

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

struct FamilyDocument {
  FiniteGroup group;
  Family family;
};

inline json family_to_json(const FiniteGroup& G, const Family& F) {
  json blocks = json::array();
  for (const Block& B : F.blocks) blocks.push_back(B);
  return json{{"group", group_to_json(G)}, {"blocks", std::move(blocks)}};
}

inline FamilyDocument family_from_json(const json& j) {
  if (!j.is_object() || !j.contains("group") || !j.contains("blocks"))
    throw std::runtime_error("family json must be an object with \"group\" and \"blocks\"");
  FiniteGroup G = j.at("group").is_string() ? parse_group_recipe(j.at("group").get<std::string>())
                                            : group_from_json(j.at("group"));
  Family F;
  for (const json& jb : j.at("blocks")) {
    Block raw = jb.get<Block>();
    Block B = sorted_block(raw);
    if (B.size() != raw.size())
      throw std::runtime_error("family json: block contains repeated elements");
    validate_block(G, B);
    F.blocks.push_back(std::move(B));
  }
  return {std::move(G), std::move(F)};
}

inline void save_family(const FiniteGroup& G, const Family& F, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << family_to_json(G, F).dump(1) << '\n';
}

inline FamilyDocument load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  json j;
  in >> j;
  return family_from_json(j);
}

// ---------------------------------------------------------------------------
// Parameter sets and reports
// ---------------------------------------------------------------------------

inline json paramset_to_json(const ParamSet& p) {
  json K = json::array();
  for (const auto& [size, mult] : p.K) K.push_back(json::array({size, mult}));
  return json{{"v", p.v}, {"K", std::move(K)}, {"lambda", p.lambda}};
}

inline ParamSet paramset_from_json(const json& j) {
  if (!j.is_object() || !j.contains("v") || !j.contains("K") || !j.contains("lambda"))
    throw std::runtime_error("paramset json must be an object with \"v\", \"K\" and \"lambda\"");
  std::vector<long long> sizes;
  for (const json& item : j.at("K")) {
    if (item.is_array()) {
      if (item.size() != 2) throw std::runtime_error("paramset json: K entries must be [size, mult]");
      const long long size = item.at(0).get<long long>();
      const long long mult = item.at(1).get<long long>();
      if (mult < 1) throw std::runtime_error("paramset json: multiplicities must be >= 1");
      for (long long i = 0; i < mult; ++i) sizes.push_back(size);
    } else {
      sizes.push_back(item.get<long long>());
    }
  }
  const ParamSet p = make_param_set(sizes, j.at("lambda").get<long long>());
  if (p.v != j.at("v").get<long long>())
    throw std::runtime_error("paramset json: v does not match the sum of K");
  return p;
}

inline ParamSet load_paramset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  json j;
  in >> j;
  return paramset_from_json(j);
}

inline json report_to_json(const VerificationReport& rep, const FiniteGroup* G = nullptr) {
  json j{{"kind", design_kind_name(rep.kind)},
         {"v", rep.v},
         {"K", rep.block_sizes},
         {"partition_ok", rep.partition_ok}};
  if (rep.lambda >= 0) j["lambda"] = rep.lambda;
  if (rep.kind == DesignKind::pds || rep.alpha >= 0) {
    j["alpha"] = rep.alpha;
    j["beta"] = rep.beta;
  }
  if (rep.rds_forbidden_order > 0) {
    j["rds"] = json{{"quotient", rep.rds_quotient}, {"forbidden_order", rep.rds_forbidden_order}};
  }
  json devs = json::array();
  for (const Deviation& d : rep.deviations) {
    json e{{"element", d.element}, {"observed", d.observed}, {"expected", d.expected}};
    if (G) e["label"] = G->label(d.element);
    devs.push_back(std::move(e));
  }
  j["deviations"] = std::move(devs);
  return j;
}

inline json verdict_to_json(const FeasibilityVerdict& v) {
  return json{{"admissible", v.admissible},
              {"failed_rule", v.failed_rule},
              {"witness", v.witness},
              {"witness_tuple", v.witness_tuple}};
}

}  // namespace hpdf
