#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "blotto/environment.hpp"
#include "blotto/game.hpp"
#include "blotto/rng.hpp"

namespace blotto {

struct LearnerConfig {
  double alpha = 0.9;
  double gamma = 0.5;
  double delta = 0.02;
  double epsilon = 0.1;
  int hotboot_runs = 10;   // xi
  int hotboot_slots = 500; // K

  void validate() const;
};

struct StateKeyHash {
  std::size_t operator()(const std::vector<int>& key) const {
    std::size_t h = 14695981039346656037ull;
    for (int v : key) {
      h ^= static_cast<std::size_t>(static_cast<uint32_t>(v));
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Q-values per state over the defense action set; unseen entries read as 0.
class QTable {
 public:
  QTable() = default;
  explicit QTable(std::size_t num_actions) : num_actions_(num_actions) {}

  std::size_t num_actions() const { return num_actions_; }
  std::size_t num_states() const { return rows_.size(); }

  double value(const std::vector<int>& state, int action) const;
  double max_value(const std::vector<int>& state) const;
  int argmax(const std::vector<int>& state) const;  // lowest index on ties
  std::vector<double>& row(const std::vector<int>& state);
  const std::unordered_map<std::vector<int>, std::vector<double>, StateKeyHash>& rows() const {
    return rows_;
  }

 private:
  std::size_t num_actions_ = 0;
  std::unordered_map<std::vector<int>, std::vector<double>, StateKeyHash> rows_;
};

// Per-state pmfs over the defense action set; unseen states start uniform.
class PolicyTable {
 public:
  PolicyTable() = default;
  explicit PolicyTable(std::size_t num_actions) : num_actions_(num_actions) {}

  std::size_t num_actions() const { return num_actions_; }
  std::size_t num_states() const { return rows_.size(); }

  std::vector<double>& row(const std::vector<int>& state);
  const std::unordered_map<std::vector<int>, std::vector<double>, StateKeyHash>& rows() const {
    return rows_;
  }

 private:
  std::size_t num_actions_ = 0;
  std::unordered_map<std::vector<int>, std::vector<double>, StateKeyHash> rows_;
};

// Bellman update with V(s') = max_a Q(s', a).
void q_update(QTable& table, const std::vector<int>& state, int action, double reward,
              const std::vector<int>& next_state, const LearnerConfig& cfg);

// The Q-argmax action gains delta, every other loses delta/(n-1); the row is
// clamped at 0 and renormalized.
void phc_policy_update(PolicyTable& policy, const QTable& table, const std::vector<int>& state,
                       const LearnerConfig& cfg);

int phc_select_action(PolicyTable& policy, const std::vector<int>& state, Rng& rng);

struct MetricPoint {
  long slot = 0;
  double protection = 0.0;
  double utility = 0.0;
};

struct RunResult {
  std::vector<MetricPoint> points;
};

RunResult run_phc_defense(Environment& env, const ActionSet& actions, const LearnerConfig& cfg,
                          long horizon, QTable& table, PolicyTable& policy, Rng& rng);

RunResult run_q_defense(Environment& env, const ActionSet& actions, const LearnerConfig& cfg,
                        long horizon, QTable& table, Rng& rng);

using ScenarioSampler = std::function<Environment(int run_index)>;

// Algorithm-2 style warm start: shared tables trained over hotboot_runs
// emulated scenarios of hotboot_slots slots each.
std::pair<QTable, PolicyTable> hotboot_phc(const LearnerConfig& cfg,
                                           const ScenarioSampler& sampler,
                                           const ActionSet& actions, Rng& rng);

// Versioned flat-file round trip for warm tables; loading checks config_hash.
void save_tables(const std::string& path, uint64_t config_hash, const QTable& table,
                 const PolicyTable& policy);
std::pair<QTable, PolicyTable> load_tables(const std::string& path, uint64_t config_hash);

uint64_t fnv1a64(const std::string& text);

}  // namespace blotto
