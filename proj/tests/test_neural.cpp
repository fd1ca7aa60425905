#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <deque>

#include "blotto/neural.hpp"

using namespace blotto;

namespace {

GameConfig make_game(int devices, int sm, int sn, int levels = 1) {
  GameConfig cfg;
  cfg.devices = devices;
  cfg.defense_budget = sm;
  cfg.attack_budget = sn;
  cfg.quant_levels = levels;
  return cfg;
}

Allocation alloc(std::vector<int> counts, int budget) {
  Allocation a;
  a.counts = std::move(counts);
  a.budget = budget;
  return a;
}

GameState state(std::vector<int> attack, std::vector<double> data) {
  GameState s;
  s.prev_attack.counts = std::move(attack);
  s.prev_attack.budget = -1;
  s.data.levels = std::move(data);
  return s;
}

// Structurally random but deterministic experience and network for oracles.
ExperienceSequence random_input(int side, Rng& rng) {
  ExperienceSequence x;
  x.side = side;
  x.values.resize(static_cast<std::size_t>(side) * side);
  for (auto& v : x.values) v = rng.uniform01();
  return x;
}

double loss_at(const NetworkParams& p, const ExperienceSequence& x,
               const std::vector<double>& target) {
  const auto c = forward(p, x);
  double loss = 0;
  for (std::size_t o = 0; o < c.output.size(); ++o) {
    const double e = c.output[o] - target[o];
    loss += e * e;
  }
  return loss;
}

// Central finite differences of the scalar loss with respect to one block.
void check_block(NetworkParams& p, std::vector<double>& w, const std::vector<double>& g,
                 const ExperienceSequence& x, const std::vector<double>& target, Rng& rng,
                 int probes) {
  const double h = 1e-5;
  for (int k = 0; k < probes; ++k) {
    const std::size_t i = rng.below(w.size());
    const double save = w[i];
    w[i] = save + h;
    const double lp = loss_at(p, x, target);
    w[i] = save - h;
    const double lm = loss_at(p, x, target);
    w[i] = save;
    const double numeric = (lp - lm) / (2 * h);
    const double denom = std::max({std::abs(numeric), std::abs(g[i]), 1e-6});
    CHECK(std::abs(numeric - g[i]) / denom < 1e-4);
  }
}

}  // namespace

TEST_CASE("input_side") {
  DqnConfig cfg;
  cfg.window = 12;
  CHECK(cfg.input_side(3) == 11);  // 12*9 + 6 = 114 -> ceil(sqrt) = 11
  cfg.window = 4;
  CHECK(cfg.input_side(3) == 7);  // 4*9 + 6 = 42 -> 7
  cfg.window = 1;
  CHECK(cfg.input_side(1) == 3);  // 5 -> ceil(sqrt)=3 floor at 3
  cfg.forced_side = 13;
  CHECK(cfg.input_side(3) == 13);
}

TEST_CASE("build_input layout and scaling") {
  const auto game = make_game(2, 4, 2);
  DqnConfig cfg;
  cfg.window = 2;

  std::deque<std::pair<GameState, Allocation>> hist;
  hist.emplace_back(state({2, 0}, {0.5, 1.0}), alloc({4, 0}, 4));
  hist.emplace_back(state({1, 1}, {0.25, 0.75}), alloc({2, 2}, 4));
  const auto cur = state({0, 2}, {1.0, 0.0});

  const auto x = build_input(hist, cur, game, cfg);
  // flat length 2*6 + 4 = 16 -> side 4
  REQUIRE(x.side == 4);
  REQUIRE(x.values.size() == 16);
  const std::vector<double> expect = {1.0, 0.0, 0.5, 1.0,  1.0, 0.0,   0.5, 0.5,
                                      0.25, 0.75, 0.5, 0.5, 0.0, 1.0, 1.0, 0.0};
  for (std::size_t i = 0; i < expect.size(); ++i)
    CHECK(x.values[i] == doctest::Approx(expect[i]).epsilon(1e-15));

  // Longer histories use only the trailing window.
  auto hist3 = hist;
  hist3.emplace_front(state({9, 9}, {0.1, 0.1}), alloc({0, 0}, 4));
  CHECK(build_input(hist3, cur, game, cfg) == x);

  std::deque<std::pair<GameState, Allocation>> shorter(hist.begin(), hist.begin() + 1);
  CHECK_THROWS_AS(build_input(shorter, cur, game, cfg), std::runtime_error);

  DqnConfig tight = cfg;
  tight.forced_side = 3;  // 9 < 16
  CHECK_THROWS_AS(build_input(hist, cur, game, tight), std::runtime_error);
}

TEST_CASE("forward shapes and zero network") {
  Rng rng(1);
  auto p = NetworkParams::glorot(5, 20, 40, 180, 6, false, rng);
  CHECK(p.flat_size() == 9 * 40);
  CHECK(p.parameter_count() ==
        static_cast<std::size_t>(20 * 4 + 20 + 40 * 20 * 4 + 40 + 180 * 360 + 180 + 6 * 180 + 6));

  auto x = random_input(5, rng);
  const auto c = forward(p, x);
  CHECK(c.conv1_act.size() == 20u * 16);
  CHECK(c.conv2_act.size() == 40u * 9);
  CHECK(c.fc1_act.size() == 180u);
  REQUIRE(c.output.size() == 6u);

  // All-zero weights: zero output regardless of input.
  NetworkParams zero = p;
  for (auto* block : {&zero.conv1_w, &zero.conv2_w, &zero.fc1_w, &zero.fc2_w})
    std::fill(block->begin(), block->end(), 0.0);
  const auto cz = forward(zero, x);
  for (double v : cz.output) CHECK(v == 0.0);

  // Glorot bounds per layer.
  for (double w : p.conv1_w) CHECK(std::abs(w) <= std::sqrt(6.0 / (4 + 80)));
  for (double w : p.fc2_w) CHECK(std::abs(w) <= std::sqrt(6.0 / (180 + 6)));

  ExperienceSequence wrong;
  wrong.side = 4;
  wrong.values.assign(16, 0.0);
  CHECK_THROWS_AS(forward(p, wrong), std::invalid_argument);
}

TEST_CASE("backward matches finite differences") {
  Rng rng(42);
  for (int trial = 0; trial < 3; ++trial) {
    const bool relu_out = trial == 2;
    auto p = NetworkParams::glorot(5, 4, 6, 10, 5, relu_out, rng);
    // Nonzero biases exercise those gradient paths too.
    for (auto* b : {&p.conv1_b, &p.conv2_b, &p.fc1_b, &p.fc2_b})
      for (auto& v : *b) v = 0.2 * (rng.uniform01() - 0.5);
    const auto x = random_input(5, rng);
    std::vector<double> target(5);
    for (auto& t : target) t = rng.uniform01() * 2 - 1;

    const auto c = forward(p, x);
    std::vector<double> d_out(5);
    for (int o = 0; o < 5; ++o) d_out[o] = 2.0 * (c.output[o] - target[o]);
    const auto g = backward(p, x, c, d_out);

    check_block(p, p.conv1_w, g.conv1_w, x, target, rng, 16);
    check_block(p, p.conv1_b, g.conv1_b, x, target, rng, 4);
    check_block(p, p.conv2_w, g.conv2_w, x, target, rng, 16);
    check_block(p, p.conv2_b, g.conv2_b, x, target, rng, 6);
    check_block(p, p.fc1_w, g.fc1_w, x, target, rng, 16);
    check_block(p, p.fc1_b, g.fc1_b, x, target, rng, 10);
    check_block(p, p.fc2_w, g.fc2_w, x, target, rng, 16);
    check_block(p, p.fc2_b, g.fc2_b, x, target, rng, 5);
  }
}

TEST_CASE("replay memory") {
  ReplayMemory mem(4);
  Rng rng(8);
  auto make_t = [&](double r) {
    Transition t;
    t.phi = random_input(3, rng);
    t.phi_next = t.phi;
    t.reward = r;
    return t;
  };
  for (int i = 0; i < 6; ++i) mem.push(make_t(i));
  CHECK(mem.size() == 4);  // FIFO overwrote rewards 0 and 1
  double min_r = 1e9;
  for (std::size_t i = 0; i < mem.size(); ++i) min_r = std::min(min_r, mem.at(i).reward);
  CHECK(min_r == 2.0);

  // Sampling without replacement: distinct indices, roughly uniform.
  std::vector<int> hits(4, 0);
  for (int k = 0; k < 40000; ++k) {
    const auto idx = mem.sample_indices(2, rng);
    CHECK(idx.size() == 2);
    CHECK(idx[0] != idx[1]);
    for (auto i : idx) ++hits[i];
  }
  for (int c : hits) CHECK(std::abs(c / 80000.0 - 0.25) < 0.025);
  CHECK_THROWS_AS(mem.sample_indices(5, rng), std::runtime_error);
}

TEST_CASE("dqn_select_action epsilon masses") {
  Rng init(5);
  auto p = NetworkParams::glorot(3, 2, 2, 4, 3, false, init);
  ExperienceSequence x = random_input(3, init);
  const auto c = forward(p, x);
  int best = 0;
  for (int a = 1; a < 3; ++a)
    if (c.output[a] > c.output[best]) best = a;

  Rng rng(21);
  std::vector<int> hits(3, 0);
  const int draws = 60000;
  for (int k = 0; k < draws; ++k) ++hits[dqn_select_action(p, x, 0.1, rng)];
  CHECK(std::abs(hits[best] / static_cast<double>(draws) - 0.9) < 0.01);
  for (int a = 0; a < 3; ++a)
    if (a != best) CHECK(std::abs(hits[a] / static_cast<double>(draws) - 0.05) < 0.01);

  Rng rng2(22);
  for (int k = 0; k < 100; ++k) CHECK(dqn_select_action(p, x, 0.0, rng2) == best);
}

TEST_CASE("train_minibatch descends and respects the learning rate") {
  Rng rng(77);
  DqnConfig cfg;
  cfg.minibatch = 8;
  cfg.capacity = 64;
  cfg.learning_rate = 1e-2;
  cfg.gamma = 0.0;  // targets are plain rewards: a regression problem
  auto p = NetworkParams::glorot(4, 3, 4, 8, 4, false, rng);

  ReplayMemory mem(64);
  for (int i = 0; i < 32; ++i) {
    Transition t;
    t.phi = random_input(4, rng);
    t.phi_next = t.phi;
    t.action = static_cast<int>(rng.below(4));
    t.reward = t.phi.values[0];  // learnable signal
    mem.push(t);
  }

  // Zero learning rate: parameters unchanged, loss stable.
  auto frozen = p;
  DqnConfig rate0 = cfg;
  rate0.learning_rate = 0.0;
  Rng r0(5);
  const double l0 = train_minibatch(frozen, mem, rate0, r0);
  CHECK(frozen.fc2_w == p.fc2_w);
  CHECK(frozen.conv1_w == p.conv1_w);
  CHECK(l0 > 0.0);

  double first = -1, last = -1;
  Rng r1(5);
  for (int step = 0; step < 400; ++step) {
    const double loss = train_minibatch(p, mem, cfg, r1);
    if (step == 0) first = loss;
    last = loss;
  }
  CHECK(last < first * 0.5);

  // gamma > 0 raises targets above plain rewards when outputs are positive.
  // (sanity: it must still run and return a finite loss)
  DqnConfig cg = cfg;
  cg.gamma = 0.5;
  const double lg = train_minibatch(p, mem, cg, r1);
  CHECK(std::isfinite(lg));
}

TEST_CASE("network serialization round trip") {
  Rng rng(3);
  auto p = NetworkParams::glorot(5, 3, 4, 8, 6, true, rng);
  const std::string path = "network_test.bin";
  save_network(path, 0xabcdefull, p);
  const auto q = load_network(path, 0xabcdefull);
  CHECK(q.side == p.side);
  CHECK(q.relu_output == p.relu_output);
  CHECK(q.conv1_w == p.conv1_w);
  CHECK(q.conv2_w == p.conv2_w);
  CHECK(q.fc1_w == p.fc1_w);
  CHECK(q.fc2_w == p.fc2_w);
  CHECK(q.fc2_b == p.fc2_b);

  CHECK_THROWS_WITH_AS(load_network(path, 0x123ull), doctest::Contains("hash"),
                       std::runtime_error);
  CHECK_THROWS_AS(load_network("missing.bin", 0xabcdefull), std::runtime_error);
  std::remove(path.c_str());
}

TEST_CASE("run_dqn_defense smoke") {
  GameConfig game = make_game(2, 2, 1);
  DataSchedule sched;
  sched.initial_raw = {0.5, 0.5};
  Environment env(game, sched, std::make_unique<StaticUniformAttacker>(1, 2, 1), 99);
  ActionSet actions(2, 2, 1);
  DqnConfig cfg;
  cfg.window = 2;
  cfg.minibatch = 4;
  cfg.capacity = 100;
  cfg.conv1_filters = 2;
  cfg.conv2_filters = 2;
  cfg.fc1_units = 8;
  Rng rng(7);
  auto p = NetworkParams::glorot(cfg.input_side(2), 2, 2, 8, static_cast<int>(actions.size()),
                                 false, rng);
  ReplayMemory mem(100);
  const auto result = run_dqn_defense(env, actions, cfg, 60, p, mem, rng);
  REQUIRE(result.points.size() == 60);
  CHECK(mem.size() > 0);
  for (const auto& pt : result.points) CHECK(std::abs(pt.protection) <= 1.0 + 1e-12);
}
