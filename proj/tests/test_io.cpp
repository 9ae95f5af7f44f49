#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include <hpdf/catalog.hpp>
#include <hpdf/io.hpp>

using namespace hpdf;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(std::string p) : path(std::move(p)) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("group files round-trip") {
  const FiniteGroup g = make_dihedral(12);
  TempFile tmp("tmp_group_roundtrip.json");
  save_group(g, tmp.path);
  const FiniteGroup loaded = load_group(tmp.path);
  CHECK(loaded.order() == g.order());
  CHECK(loaded.flat_table() == g.flat_table());
  CHECK(loaded.labels() == g.labels());
  CHECK(loaded.descriptor() == g.descriptor());
}

TEST_CASE("the loader rejects corrupted tables") {
  json j = group_to_json(make_cyclic(3));
  j["table"][1][1] = 1;  // Latin-square violation
  CHECK_THROWS_WITH_AS(group_from_json(j), doctest::Contains("latin"), std::runtime_error);

  json missing = {{"order", 3}};
  CHECK_THROWS_AS(group_from_json(missing), std::runtime_error);

  json bad_shape = group_to_json(make_cyclic(3));
  bad_shape["table"].erase(2);
  CHECK_THROWS_AS(group_from_json(bad_shape), std::runtime_error);
}

TEST_CASE("recipe grammar") {
  CHECK(parse_group_recipe("cyclic(40)").order() == 40);
  CHECK(parse_group_recipe(" product( cyclic(3), dihedral(8) ) ").order() == 24);
  CHECK(parse_group_recipe("product(cyclic(3),dihedral(8))").descriptor() ==
        "product(cyclic(3),dihedral(8))");
  CHECK(parse_group_recipe("semidirect(3,8,-1)").order() == 24);
  CHECK(parse_group_recipe("sl23").order() == 24);
  CHECK(parse_group_recipe("dicyclic(20)").order() == 20);
  CHECK(parse_group_recipe("product(product(cyclic(2),cyclic(2)),cyclic(3))").order() == 12);

  CHECK_THROWS_AS(parse_group_recipe("cyclic(0)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_group_recipe("frobnicate(3)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_group_recipe("cyclic(3) trailing"), std::invalid_argument);
  CHECK_THROWS_AS(parse_group_recipe("cyclic(3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_group_recipe("file:does_not_exist.json"), std::runtime_error);
}

TEST_CASE("family files round-trip") {
  const CatalogEntry& e = get_entry("hpdf36_z6z6");
  TempFile tmp("tmp_family_roundtrip.json");
  save_family(*e.group, e.family, tmp.path);
  const FamilyDocument doc = load_family(tmp.path);
  CHECK(doc.group.flat_table() == e.group->flat_table());
  CHECK(doc.family.blocks == e.family.blocks);
  CHECK(verify_hpdf(doc.group, doc.family).kind == DesignKind::hpdf);
}

TEST_CASE("families can reference groups by recipe") {
  const json j = {{"group", "cyclic(4)"}, {"blocks", {{0}, {1, 2, 3}}}};
  const FamilyDocument doc = family_from_json(j);
  CHECK(doc.group.order() == 4);
  CHECK(verify_hpdf(doc.group, doc.family).kind == DesignKind::hpdf);

  const json dup = {{"group", "cyclic(4)"}, {"blocks", {{0, 0}, {1, 2, 3}}}};
  CHECK_THROWS_AS(family_from_json(dup), std::runtime_error);

  const json range = {{"group", "cyclic(4)"}, {"blocks", {{0}, {1, 2, 9}}}};
  CHECK_THROWS(family_from_json(range));
}

TEST_CASE("parameter sets round-trip") {
  const ParamSet p = make_param_set({1, 1, 1, 2, 2, 17}, 12);
  const json j = paramset_to_json(p);
  const ParamSet q = paramset_from_json(j);
  CHECK(q == p);

  // a flat list of sizes is accepted too
  const ParamSet flat = paramset_from_json(json{{"v", 4}, {"K", {1, 3}}, {"lambda", 2}});
  CHECK(flat.v == 4);
  CHECK(flat.lambda == 2);

  CHECK_THROWS_AS(paramset_from_json(json{{"v", 4}, {"K", {1, 3}}, {"lambda", 3}}),
                  std::exception);
  CHECK_THROWS_AS(paramset_from_json(json{{"v", 5}, {"K", {1, 3}}, {"lambda", 2}}),
                  std::runtime_error);
}

TEST_CASE("reports serialize with labels") {
  const FiniteGroup z40 = make_cyclic(40);
  const Block d = {1, 2, 3, 5, 6, 9, 14, 15, 18, 20, 25, 27, 35};
  const json ok = report_to_json(verify_ds(z40, d), &z40);
  CHECK(ok.at("kind") == "DS");
  CHECK(ok.at("lambda") == 4);
  CHECK(ok.at("deviations").empty());

  const json bad = report_to_json(verify_ds(make_cyclic(5), {0, 1}), nullptr);
  CHECK(bad.at("kind") == "none");
  CHECK_FALSE(bad.at("deviations").empty());

  const json verdict = verdict_to_json(fail_verdict("index2_diophantine", "no solution"));
  CHECK(verdict.at("admissible") == false);
  CHECK(verdict.at("failed_rule") == "index2_diophantine");
}
