#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <memory>
#include <numeric>

#include "blotto/learning.hpp"

using namespace blotto;

namespace {

LearnerConfig defaults() { return LearnerConfig{}; }

const std::vector<int> kS0 = {0, 0};
const std::vector<int> kS1 = {1, 0};

}  // namespace

TEST_CASE("q_update arithmetic") {
  QTable table(3);
  auto cfg = defaults();  // alpha 0.9, gamma 0.5

  // Empty table: Q <- 0.1*0 + 0.9*(2 + 0.5*0) = 1.8
  q_update(table, kS0, 1, 2.0, kS1, cfg);
  CHECK(table.value(kS0, 1) == doctest::Approx(1.8).epsilon(1e-15));
  CHECK(table.value(kS0, 0) == 0.0);

  // Next-state max feeds back through gamma.
  table.row(kS1) = {0.0, 4.0, 1.0};
  q_update(table, kS0, 1, 2.0, kS1, cfg);
  // 0.1*1.8 + 0.9*(2 + 0.5*4) = 0.18 + 3.6 = 3.78
  CHECK(table.value(kS0, 1) == doctest::Approx(3.78).epsilon(1e-12));

  CHECK(table.max_value(kS1) == doctest::Approx(4.0));
  CHECK(table.argmax(kS1) == 1);
  table.row(kS1) = {4.0, 4.0, 1.0};
  CHECK(table.argmax(kS1) == 0);  // lowest index on ties
  CHECK(table.max_value({9, 9}) == 0.0);
  CHECK(table.argmax({9, 9}) == 0);
}

TEST_CASE("phc_policy_update increments and projection") {
  auto cfg = defaults();  // delta 0.02

  // Uniform over 6 actions, argmax at 2: winner 1/6+0.02, others 1/6-0.004.
  QTable table(6);
  table.row(kS0) = {0, 0, 5, 0, 0, 0};
  PolicyTable policy(6);
  phc_policy_update(policy, table, kS0, cfg);
  const auto& row = policy.row(kS0);
  CHECK(row[2] == doctest::Approx(1.0 / 6 + 0.02).epsilon(1e-12));
  for (int j : {0, 1, 3, 4, 5})
    CHECK(row[j] == doctest::Approx(1.0 / 6 - 0.004).epsilon(1e-12));
  CHECK(std::accumulate(row.begin(), row.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));

  // Clamp-and-renormalize: a probability already at 0.003 cannot go negative.
  QTable t2(3);
  t2.row(kS0) = {1, 0, 0};
  PolicyTable p2(3);
  p2.row(kS0) = {0.9, 0.097, 0.003};
  phc_policy_update(p2, t2, kS0, cfg);
  const auto& r2 = p2.row(kS0);
  for (double v : r2) CHECK(v >= 0.0);
  CHECK(std::accumulate(r2.begin(), r2.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  // Raw: {0.92, 0.087, -0.007} -> clamp {0.92, 0.087, 0} -> /1.007
  CHECK(r2[0] == doctest::Approx(0.92 / 1.007).epsilon(1e-12));
  CHECK(r2[1] == doctest::Approx(0.087 / 1.007).epsilon(1e-12));
  CHECK(r2[2] == 0.0);

  // Fuzz: updates never leave the simplex.
  QTable t3(5);
  PolicyTable p3(5);
  Rng rng(17);
  for (int k = 0; k < 10000; ++k) {
    std::vector<int> s = {static_cast<int>(rng.below(20))};
    auto& qr = t3.row(s);
    qr[rng.below(5)] += rng.uniform01() * 2 - 1;
    phc_policy_update(p3, t3, s, defaults());
    const auto& pr = p3.row(s);
    double sum = 0;
    for (double v : pr) {
      CHECK(v >= -1e-15);
      CHECK(v <= 1.0 + 1e-12);
      sum += v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }

  // Repeated updates with a fixed argmax converge to a pure action.
  QTable t4(4);
  t4.row(kS0) = {0, 0, 0, 3};
  PolicyTable p4(4);
  for (int k = 0; k < 200; ++k) phc_policy_update(p4, t4, kS0, defaults());
  CHECK(p4.row(kS0)[3] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("phc_select_action follows the pmf") {
  PolicyTable policy(4);
  policy.row(kS0) = {0.0, 0.5, 0.0, 0.5};
  Rng rng(3);
  std::vector<int> histogram(4, 0);
  for (int k = 0; k < 40000; ++k) ++histogram[phc_select_action(policy, kS0, rng)];
  CHECK(histogram[0] == 0);
  CHECK(histogram[2] == 0);
  CHECK(std::abs(histogram[1] / 40000.0 - 0.5) < 0.01);

  // Unseen state: uniform row.
  PolicyTable fresh(4);
  Rng rng2(5);
  std::vector<int> h2(4, 0);
  for (int k = 0; k < 40000; ++k) ++h2[phc_select_action(fresh, kS1, rng2)];
  for (int c : h2) CHECK(std::abs(c / 40000.0 - 0.25) < 0.01);
}

TEST_CASE("LearnerConfig validation") {
  CHECK_NOTHROW(defaults().validate());
  auto bad = defaults();
  bad.alpha = 1.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = defaults();
  bad.delta = -0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = defaults();
  bad.hotboot_runs = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

namespace {

Environment fixed_env(uint64_t seed) {
  GameConfig cfg;
  cfg.devices = 2;
  cfg.defense_budget = 2;
  cfg.attack_budget = 1;
  DataSchedule sched;
  sched.initial_raw = {0.5, 0.5};
  class Fixed : public AttackerPolicy {
   public:
    Allocation act(long, const Allocation&, const DataSizeVector&, Rng&) override {
      Allocation a;
      a.counts = {1, 0};
      a.budget = 1;
      return a;
    }
  };
  return Environment(cfg, sched, std::make_unique<Fixed>(), seed);
}

}  // namespace

TEST_CASE("PHC and Q defense loops learn against a fixed attack") {
  // Attack fixed at (1,0); the best replies (2,0) and (1,1) both earn 0.5.
  ActionSet actions(2, 2, 1);
  auto cfg = defaults();

  auto env1 = fixed_env(11);
  QTable qt(actions.size());
  PolicyTable pt(actions.size());
  Rng rng1(12);
  const auto phc = run_phc_defense(env1, actions, cfg, 3000, qt, pt, rng1);
  REQUIRE(phc.points.size() == 3000);
  double tail = 0;
  for (std::size_t k = 2500; k < 3000; ++k) tail += phc.points[k].utility;
  CHECK(tail / 500 > 0.4);
  CHECK(phc.points.front().slot == 1);
  CHECK(phc.points.back().slot == 3000);

  auto env2 = fixed_env(11);
  QTable qt2(actions.size());
  Rng rng2(12);
  const auto ql = run_q_defense(env2, actions, cfg, 3000, qt2, rng2);
  double tail2 = 0;
  for (std::size_t k = 2500; k < 3000; ++k) tail2 += ql.points[k].utility;
  CHECK(tail2 / 500 > 0.3);  // epsilon-greedy keeps exploring
}

TEST_CASE("hotboot_phc produces shared tables") {
  ActionSet actions(2, 2, 1);
  auto cfg = defaults();
  cfg.hotboot_runs = 3;
  cfg.hotboot_slots = 100;
  ScenarioSampler sampler = [](int run) { return fixed_env(1000 + run); };
  Rng rng(9);
  auto [qt, pt] = hotboot_phc(cfg, sampler, actions, rng);
  CHECK(qt.num_states() > 0);
  CHECK(pt.num_states() > 0);
  CHECK(qt.num_actions() == actions.size());

  // Deterministic for the same rng seed.
  Rng rng2(9);
  auto [qt2, pt2] = hotboot_phc(cfg, sampler, actions, rng2);
  REQUIRE(qt2.num_states() == qt.num_states());
  for (const auto& [key, row] : qt.rows()) {
    const auto it = qt2.rows().find(key);
    REQUIRE(it != qt2.rows().end());
    CHECK(it->second == row);
  }
}

TEST_CASE("table serialization round trip") {
  QTable qt(3);
  qt.row({1, 2}) = {0.5, -1.25, 3.0};
  qt.row({0, 7}) = {1e-9, 2.0, 0.0};
  PolicyTable pt(3);
  pt.row({1, 2}) = {0.25, 0.25, 0.5};

  const std::string path = "warm_tables_test.txt";
  const uint64_t hash = fnv1a64("scenario-x");
  save_tables(path, hash, qt, pt);
  auto [qt2, pt2] = load_tables(path, hash);
  CHECK(qt2.num_actions() == 3);
  CHECK(qt2.value({1, 2}, 1) == -1.25);
  CHECK(qt2.value({0, 7}, 0) == 1e-9);
  CHECK(pt2.row({1, 2}) == std::vector<double>{0.25, 0.25, 0.5});

  CHECK_THROWS_WITH_AS(load_tables(path, hash + 1), doctest::Contains("hash"),
                       std::runtime_error);
  CHECK_THROWS_AS(load_tables("no_such_file.txt", hash), std::runtime_error);
  std::remove(path.c_str());
}

TEST_CASE("fnv1a64 reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}
