#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "blotto/game.hpp"
#include "blotto/rng.hpp"

using namespace blotto;

namespace {

// Independent nested-loop enumeration for small instances.
std::set<std::vector<int>> brute_force_actions(int budget, int devices) {
  std::set<std::vector<int>> out;
  std::vector<int> v(devices, 0);
  while (true) {
    int sum = 0;
    for (int c : v) sum += c;
    if (sum <= budget) out.insert(v);
    int i = devices - 1;
    while (i >= 0 && v[i] == budget) v[i--] = 0;
    if (i < 0) break;
    ++v[i];
  }
  return out;
}

}  // namespace

TEST_CASE("sign function") {
  CHECK(sign(3) == 1);
  CHECK(sign(0) == 0);
  CHECK(sign(-2) == -1);
  CHECK(sign(1e-300) == 1);
}

TEST_CASE("enumerate_actions small cases") {
  const auto a = enumerate_actions(2, 2, 1);
  REQUIRE(a.size() == 6);
  std::vector<std::vector<int>> expected = {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}};
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(a[i].counts == expected[i]);

  const auto zero = enumerate_actions(0, 3, 1);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].counts == std::vector<int>{0, 0, 0});

  const auto stepped = enumerate_actions(4, 2, 2);
  REQUIRE(stepped.size() == 6);
  std::vector<std::vector<int>> exp2 = {{0, 0}, {0, 2}, {0, 4}, {2, 0}, {2, 2}, {4, 0}};
  for (std::size_t i = 0; i < exp2.size(); ++i) CHECK(stepped[i].counts == exp2[i]);
}

TEST_CASE("enumerate_actions matches nested-loop brute force") {
  for (int budget = 0; budget <= 6; ++budget) {
    for (int devices = 1; devices <= 3; ++devices) {
      const auto fast = enumerate_actions(budget, devices, 1);
      const auto slow = brute_force_actions(budget, devices);
      REQUIRE(fast.size() == slow.size());
      for (const auto& a : fast) CHECK(slow.count(a.counts) == 1);
    }
  }
}

TEST_CASE("enumerate_actions respects the cap") {
  CHECK_THROWS_WITH_AS(enumerate_actions(100, 5, 1, 1000), doctest::Contains("action space too large"),
                       std::runtime_error);
  CHECK(auto_granularity(10, 10, 10000) == 2);
}

TEST_CASE("utility and protection level") {
  const DataSizeVector b{{0.5, 0.25, 0.25}};
  const Allocation m{{3, 0, 1}, 4};
  const Allocation n{{1, 2, 1}, 4};
  CHECK(utility_defender(b, m, n) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(protection_level(b, m, n) == doctest::Approx(0.25).epsilon(1e-15));

  CHECK(utility_defender(b, m, m) == 0.0);
  const DataSizeVector ones{{1.0, 1.0, 1.0}};
  CHECK(utility_defender(ones, Allocation{{1, 1, 1}, 3}, Allocation{{0, 0, 0}, 0}) == 3.0);
  CHECK(protection_level(ones, Allocation{{1, 1, 1}, 3}, Allocation{{0, 0, 0}, 0}) == 1.0);

  CHECK_THROWS_AS(protection_level(DataSizeVector{{0.0, 0.0}}, Allocation{{1, 0}, 1},
                                   Allocation{{0, 1}, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(utility_defender(b, Allocation{{1, 1}, 2}, n), std::invalid_argument);
}

TEST_CASE("zero-sum, antisymmetry and scale covariance properties") {
  Rng rng(42);
  for (int trial = 0; trial < 2000; ++trial) {
    const int d = 1 + rng.below(4);
    DataSizeVector b;
    Allocation m, n;
    for (int i = 0; i < d; ++i) {
      b.levels.push_back(rng.below(5) / 4.0);
      m.counts.push_back(rng.below(5));
      n.counts.push_back(rng.below(5));
    }
    const auto out = resolve_slot(b, m, n);
    CHECK(out.utility_defender + out.utility_attacker == 0.0);
    CHECK(utility_defender(b, n, m) == -out.utility_defender);
    if (b.total() > 0) {
      CHECK(out.protection_level >= -1.0);
      CHECK(out.protection_level <= 1.0);
      const double c = 1.0 + rng.below(8);
      DataSizeVector scaled;
      for (double v : b.levels) scaled.levels.push_back(c * v);
      CHECK(utility_defender(scaled, m, n) ==
            doctest::Approx(c * out.utility_defender).epsilon(1e-12));
      CHECK(protection_level(scaled, m, n) == doctest::Approx(out.protection_level).epsilon(1e-12));
    }
  }
}

TEST_CASE("quantize_data") {
  const auto q = quantize_data({0.26, 0.74}, 4);
  CHECK(q.levels == std::vector<double>{0.25, 0.75});

  const auto grid = quantize_data({0.0, 0.25, 1.0}, 4);
  CHECK(grid.levels == std::vector<double>{0.0, 0.25, 1.0});

  CHECK(quantize_data({0.125}, 4).levels == std::vector<double>{0.25});  // tie rounds up
  CHECK_THROWS_AS(quantize_data({1.5}, 4), std::invalid_argument);
  CHECK_THROWS_AS(quantize_data({-0.1}, 4), std::invalid_argument);
}

TEST_CASE("GameConfig validation") {
  GameConfig ok{3, 6, 2, 4, 1};
  CHECK_NOTHROW(ok.validate());
  GameConfig bad = ok;
  bad.granularity = 3;  // exceeds min(S_M, S_N) = 2
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.devices = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("ActionSet index lookup") {
  const ActionSet set(4, 2, 2);
  REQUIRE(set.size() == 6);
  for (std::size_t i = 0; i < set.size(); ++i)
    CHECK(set.index_of(set.at(i).counts) == static_cast<int>(i));
  CHECK(set.index_of({1, 1}) == -1);
  CHECK(set.index_of({0, 0, 0}) == -1);
}
