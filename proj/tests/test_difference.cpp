#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <hpdf/catalog.hpp>
#include <hpdf/difference.hpp>

#include "test_support.hpp"

using namespace hpdf;

namespace {
const Block kSingerD = {1, 2, 3, 5, 6, 9, 14, 15, 18, 20, 25, 27, 35};
}

TEST_CASE("delta of a block") {
  const FiniteGroup z40 = make_cyclic(40);
  const Multiset d = delta_block(z40, {5, 15, 25});
  CHECK(d.at(10) == 2);
  CHECK(d.at(20) == 2);
  CHECK(d.at(30) == 2);
  CHECK(d.total_nonidentity() == 6);
  CHECK(d.at(0) == 0);

  const Multiset single = delta_block(z40, {13});
  CHECK(single.total_nonidentity() == 0);

  const FiniteGroup z5 = make_cyclic(5);
  const Multiset pair = delta_block(z5, {0, 1});
  CHECK(pair.at(1) == 1);
  CHECK(pair.at(4) == 1);
  CHECK(pair.total_nonidentity() == 2);

  CHECK_THROWS_AS(delta_block(z5, {0, 7}), std::out_of_range);
  CHECK_THROWS_AS(delta_block(z5, Block{1, 1}), std::invalid_argument);
}

TEST_CASE("delta of a family") {
  const FiniteGroup z6 = make_cyclic(6);
  Family singletons;
  for (int g = 0; g < 6; ++g) singletons.blocks.push_back({g});
  CHECK(delta_family(z6, singletons).total_nonidentity() == 0);

  // the order-40 family covers every nonzero element exactly 20 times
  const CatalogEntry& e40 = get_entry("hpdf40_cyclic");
  const Multiset d = delta_family(*e40.group, e40.family);
  for (int g = 1; g < 40; ++g) CHECK(d.at(g) == 20);

  const FiniteGroup z4 = make_cyclic(4);
  const Multiset two = delta_family(z4, Family{{{1, 2, 3}, {0}}});
  for (int g = 1; g < 4; ++g) CHECK(two.at(g) == 2);
}

TEST_CASE("verify_pdf") {
  const CatalogEntry& e36 = get_entry("hpdf36_z6z6");
  const VerificationReport rep = verify_pdf(*e36.group, e36.family);
  CHECK(rep.kind == DesignKind::pdf);
  CHECK(rep.lambda == 18);
  CHECK(rep.block_sizes == std::vector<long long>{3, 9, 24});

  // the whole group as one block: every nonzero element arises v times
  const FiniteGroup z5 = make_cyclic(5);
  const VerificationReport whole = verify_pdf(z5, Family{{{0, 1, 2, 3, 4}}});
  CHECK(whole.kind == DesignKind::pdf);
  CHECK(whole.lambda == 5);

  const VerificationReport overlap = verify_pdf(z5, Family{{{0, 1}, {1, 2}, {3, 4}}});
  CHECK(overlap.kind == DesignKind::none);
  CHECK_FALSE(overlap.partition_ok);
  CHECK_FALSE(overlap.deviations.empty());
}

TEST_CASE("verify_hpdf") {
  const CatalogEntry& e24 = get_entry("hpdf24_c3xc8");
  const VerificationReport rep = verify_hpdf(*e24.group, e24.family);
  CHECK(rep.kind == DesignKind::hpdf);
  CHECK(rep.v == 24);
  CHECK(rep.lambda == 12);
  CHECK(rep.block_sizes == std::vector<long long>{1, 1, 1, 2, 2, 17});

  const FiniteGroup z4 = make_cyclic(4);
  const VerificationReport r4 = verify_hpdf(z4, Family{{{0}, {1, 2, 3}}});
  CHECK(r4.kind == DesignKind::hpdf);
  CHECK(r4.lambda == 2);

  // a valid PDF whose group order is not 2*lambda stays a PDF
  const FiniteGroup z2 = make_cyclic(2);
  const VerificationReport r2 = verify_hpdf(z2, Family{{{0}, {1}}});
  CHECK(r2.kind == DesignKind::pdf);
  CHECK(r2.lambda == 0);
}

TEST_CASE("verify_ds") {
  const FiniteGroup z40 = make_cyclic(40);
  const VerificationReport rd = verify_ds(z40, kSingerD);
  CHECK(rd.kind == DesignKind::ds);
  CHECK(rd.v == 40);
  CHECK(rd.block_sizes == std::vector<long long>{13});
  CHECK(rd.lambda == 4);

  const VerificationReport rc = verify_ds(z40, complement(z40, kSingerD));
  CHECK(rc.kind == DesignKind::ds);
  CHECK(rc.block_sizes == std::vector<long long>{27});
  CHECK(rc.lambda == 18);

  const VerificationReport bad = verify_ds(make_cyclic(5), {0, 1});
  CHECK(bad.kind == DesignKind::none);
  CHECK_FALSE(bad.deviations.empty());
}

TEST_CASE("verify_pds") {
  const FiniteGroup z5 = make_cyclic(5);
  const VerificationReport r = verify_pds(z5, {1, 4});
  CHECK(r.kind == DesignKind::pds);
  CHECK(r.alpha == 0);
  CHECK(r.beta == 1);

  // any difference set avoiding the identity is a PDS with alpha = beta
  const FiniteGroup z40 = make_cyclic(40);
  const VerificationReport rd = verify_pds(z40, kSingerD);
  CHECK(rd.kind == DesignKind::pds);
  CHECK(rd.alpha == 4);
  CHECK(rd.beta == 4);

  const VerificationReport rs = verify_pds(z5, {1});
  CHECK(rs.kind == DesignKind::pds);
  CHECK(rs.alpha == 0);
  CHECK(rs.beta == 0);
}

TEST_CASE("verify_rds") {
  const FiniteGroup z40 = make_cyclic(40);
  const Subgroup N{{0, 10, 20, 30}, 40};
  const VerificationReport r =
      verify_rds(z40, {1, 2, 3, 6, 9, 14, 18, 20, 27}, N);
  CHECK(r.kind == DesignKind::rds);
  CHECK(r.rds_quotient == 10);
  CHECK(r.rds_forbidden_order == 4);
  CHECK(r.block_sizes == std::vector<long long>{9});
  CHECK(r.lambda == 2);

  const VerificationReport rs = verify_rds(z40, {3}, N);
  CHECK(rs.kind == DesignKind::rds);
  CHECK(rs.lambda == 0);

  // delta {5,15,25} lands entirely inside N
  const VerificationReport rb = verify_rds(z40, {5, 15, 25}, N);
  CHECK(rb.kind == DesignKind::none);
  CHECK_FALSE(rb.deviations.empty());

  CHECK_THROWS_AS(verify_rds(z40, {1, 2}, Subgroup{{0, 10, 20}, 40}), std::invalid_argument);
}

TEST_CASE("complement") {
  const FiniteGroup z40 = make_cyclic(40);
  CHECK(complement(z40, {}).size() == 40);
  CHECK(complement(z40, complement(z40, kSingerD)) == kSingerD);

  // the complement of the difference set is the 27-element block of the
  // order-40 family
  const CatalogEntry& e40 = get_entry("hpdf40_cyclic");
  CHECK(complement(z40, kSingerD) == e40.family.blocks[3]);
}

TEST_CASE("complement multiplicity law") {
  const FiniteGroup z5 = make_cyclic(5);
  const Multiset dc = delta_block(z5, complement(z5, {0, 1}));
  CHECK(dc.at(1) == 2);
  CHECK(dc.at(2) == 1);
  CHECK(dc.at(3) == 1);
  CHECK(dc.at(4) == 2);
  CHECK(complement_multiplicity_check(z5, {0, 1}));
  CHECK(complement_multiplicity_check(z5, {}));

  SUBCASE("random blocks in varied groups") {
    auto gen = testsupport::seeded_rng(12345);
    for (int iter = 0; iter < 200; ++iter) {
      const FiniteGroup& G =
          testsupport::property_group_pool()[iter % testsupport::property_group_pool().size()];
      CHECK(complement_multiplicity_check(G, testsupport::random_block(G, gen)));
    }
  }
}

TEST_CASE("delta invariants on random blocks") {
  auto gen = testsupport::seeded_rng(777);
  for (int iter = 0; iter < 200; ++iter) {
    const FiniteGroup& G =
        testsupport::property_group_pool()[iter % testsupport::property_group_pool().size()];
    const Block B = testsupport::random_block(G, gen);
    const Multiset d = delta_block(G, B);
    const long long k = static_cast<long long>(B.size());
    CHECK(d.total_nonidentity() == k * (k - 1));
    for (int g = 1; g < G.order(); ++g) CHECK(d.at(g) == d.at(G.inverse(g)));
  }
}

TEST_CASE("two-block partitioned families decompose into difference sets") {
  const FiniteGroup z40 = make_cyclic(40);
  const FiniteGroup z4 = make_cyclic(4);
  auto gen = testsupport::seeded_rng(99);

  std::vector<std::pair<const FiniteGroup*, Block>> candidates;
  candidates.push_back({&z40, kSingerD});
  candidates.push_back({&z4, {1, 2, 3}});
  for (int iter = 0; iter < 200; ++iter) {
    const FiniteGroup& G =
        testsupport::property_group_pool()[iter % testsupport::property_group_pool().size()];
    candidates.push_back({&G, testsupport::random_block(G, gen)});
  }
  int accepted = 0;
  for (const auto& [G, B] : candidates) {
    const Block C = complement(*G, B);
    if (B.empty() || C.empty()) continue;
    const VerificationReport rep = verify_pdf(*G, Family{{B, C}});
    if (rep.kind != DesignKind::pdf) continue;
    ++accepted;
    CHECK(verify_ds(*G, B).kind == DesignKind::ds);
    CHECK(verify_ds(*G, C).kind == DesignKind::ds);
  }
  CHECK(accepted >= 2);  // at least the two seeded difference sets
}

TEST_CASE("verification is translation invariant") {
  auto gen = testsupport::seeded_rng(4242);
  std::vector<std::pair<const FiniteGroup*, Family>> cases;
  for (const char* id : {"hpdf24_c3xc8", "hpdf24_sl23", "hpdf36_d6d6", "hpdf40_cyclic"}) {
    const CatalogEntry& e = get_entry(id);
    cases.push_back({&*e.group, e.family});
  }
  // random partitions (almost surely not PDFs) must keep their verdicts too
  for (int iter = 0; iter < 40; ++iter) {
    const FiniteGroup& G =
        testsupport::property_group_pool()[iter % testsupport::property_group_pool().size()];
    Block B = testsupport::random_block(G, gen);
    Family f{{B, complement(G, B)}};
    if (f.blocks[0].empty() || f.blocks[1].empty()) continue;
    cases.push_back({&G, std::move(f)});
  }
  for (const auto& [G, fam] : cases) {
    const VerificationReport base = verify_pdf(*G, fam);
    for (int g = 0; g < G->order(); g += std::max(1, G->order() / 7)) {
      const VerificationReport moved = verify_pdf(*G, testsupport::translate_family(*G, fam, g));
      CHECK(moved.kind == base.kind);
      CHECK(moved.lambda == base.lambda);
      CHECK(moved.block_sizes == base.block_sizes);
    }
  }
}

TEST_CASE("involution multiplicities in verified families are even") {
  for (const CatalogEntry& e : catalog_entries()) {
    if (e.kind != CatalogEntryKind::hpdf) continue;
    const Multiset d = delta_family(*e.group, e.family);
    for (int g : involutions(*e.group)) CHECK(d.at(g) % 2 == 0);
  }
}

TEST_CASE("difference table rendering") {
  const FiniteGroup z40 = make_cyclic(40);
  const std::string table = render_difference_table(z40, {5, 15, 25});
  CHECK(table.find("30") != std::string::npos);
  CHECK(table.find("-") != std::string::npos);
  // one header line plus one line per element
  CHECK(std::count(table.begin(), table.end(), '\n') == 4);
}
