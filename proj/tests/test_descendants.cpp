#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <numeric>

#include <hpdf/descendants.hpp>

using namespace hpdf;

namespace {

std::map<long long, long long> size_map(const ParamSet& p) {
  std::map<long long, long long> m;
  for (const auto& [size, mult] : p.K) m[size] = mult;
  return m;
}

const ParamSet kBase24 = make_param_set({1, 1, 1, 2, 2, 17}, 12);
const ParamSet kBase36 = make_param_set({3, 9, 24}, 18);
const ParamSet kBase40 = make_param_set({1, 3, 9, 27}, 20);

}  // namespace

TEST_CASE("components of an integer") {
  CHECK(components(63).components == std::vector<long long>{7, 9});
  CHECK(components(49).components == std::vector<long long>{49});
  CHECK(components(13).components == std::vector<long long>{13});
  CHECK(components(360).components == std::vector<long long>{5, 8, 9});
  CHECK_THROWS_AS(components(1), std::invalid_argument);
  CHECK_THROWS_AS(components(0), std::invalid_argument);

  SUBCASE("components multiply back and are pairwise coprime") {
    for (long long m = 2; m <= 2000; ++m) {
      const ComponentSet cs = components(m);
      long long prod = 1;
      for (long long c : cs.components) prod *= c;
      CHECK(prod == m);
      for (size_t i = 0; i < cs.components.size(); ++i)
        for (size_t j = i + 1; j < cs.components.size(); ++j)
          CHECK(std::gcd(cs.components[i], cs.components[j]) == 1);
    }
  }
}

TEST_CASE("descendant parameters of the order-24 base") {
  const auto d = descendant_params(kBase24, 18);
  REQUIRE(d.has_value());
  CHECK(d->result.v == 888);  // 2 * 12 * 37
  CHECK(d->result.lambda == 24);
  const auto m = size_map(d->result);
  CHECK(m.at(2) == 54);
  CHECK(m.at(4) == 36);
  CHECK(m.at(34) == 18);
  CHECK(m.at(24) == 1);
  CHECK(param_identities_hold(d->result));

  // 2n+1 = 35 has components {5, 7}, both below 34
  CHECK_FALSE(descendant_params(kBase24, 17).has_value());
  CHECK(min_descendant_n(kBase24) == 18);
}

TEST_CASE("descendant parameters of the order-36 base") {
  const auto d = descendant_params(kBase36, 24);
  REQUIRE(d.has_value());
  CHECK(d->result.v == 1764);  // 2 * 18 * 49; the component 49 exceeds 48
  CHECK(d->result.lambda == 36);
  const auto m = size_map(d->result);
  CHECK(m.at(6) == 24);
  CHECK(m.at(18) == 24);
  CHECK(m.at(48) == 24);
  CHECK(m.at(36) == 1);
  CHECK(min_descendant_n(kBase36) == 24);
  CHECK_FALSE(descendant_params(kBase36, 23).has_value());
}

TEST_CASE("descendant parameters of the order-40 base") {
  const auto d = descendant_params(kBase40, 29);
  REQUIRE(d.has_value());
  CHECK(d->result.v == 2360);  // 2 * 20 * 59
  CHECK(d->result.lambda == 40);
  const auto m = size_map(d->result);
  CHECK(m.at(2) == 29);
  CHECK(m.at(6) == 29);
  CHECK(m.at(18) == 29);
  CHECK(m.at(54) == 29);
  CHECK(m.at(40) == 1);
  CHECK(min_descendant_n(kBase40) == 29);
  CHECK_FALSE(descendant_params(kBase40, 28).has_value());
}

TEST_CASE("gate boundary and identities across small n") {
  for (const ParamSet& base : {kBase24, kBase36, kBase40}) {
    const long long first = min_descendant_n(base);
    CHECK(descendant_params(base, first).has_value());
    if (first > 1) CHECK_FALSE(descendant_params(base, first - 1).has_value());
    for (long long n = 1; n <= first + 20; ++n) {
      const auto d = descendant_params(base, n);
      if (!d) continue;
      CHECK(param_identities_hold(d->result));
      CHECK(d->result.v == 2 * base.lambda * (2 * n + 1));
      CHECK(d->result.lambda == 2 * base.lambda);
      CHECK(d->result.block_count() == base.block_count() * n + 1);
    }
  }
}

TEST_CASE("non-Hadamard bases are rejected") {
  const ParamSet pdf15 = make_param_set({1, 2, 4, 8}, 5);  // v = 15 != 2*lambda
  CHECK_THROWS_AS(descendant_params(pdf15, 10), std::invalid_argument);
  CHECK_THROWS_AS(descendant_params(kBase24, 0), std::invalid_argument);
}
