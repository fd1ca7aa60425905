#include "blotto/learning.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace blotto {

void LearnerConfig::validate() const {
  if (alpha <= 0.0 || alpha > 1.0) throw std::invalid_argument("LearnerConfig: alpha outside (0,1]");
  if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("LearnerConfig: gamma outside [0,1]");
  if (delta <= 0.0 || delta > 1.0) throw std::invalid_argument("LearnerConfig: delta outside (0,1]");
  if (epsilon < 0.0 || epsilon > 1.0) throw std::invalid_argument("LearnerConfig: epsilon outside [0,1]");
  if (hotboot_runs < 1) throw std::invalid_argument("LearnerConfig: hotboot_runs must be >= 1");
  if (hotboot_slots < 1) throw std::invalid_argument("LearnerConfig: hotboot_slots must be >= 1");
}

double QTable::value(const std::vector<int>& state, int action) const {
  auto it = rows_.find(state);
  return it == rows_.end() ? 0.0 : it->second[static_cast<std::size_t>(action)];
}

double QTable::max_value(const std::vector<int>& state) const {
  auto it = rows_.find(state);
  if (it == rows_.end()) return 0.0;
  return *std::max_element(it->second.begin(), it->second.end());
}

int QTable::argmax(const std::vector<int>& state) const {
  auto it = rows_.find(state);
  if (it == rows_.end()) return 0;
  const auto& row = it->second;
  std::size_t best = 0;
  for (std::size_t a = 1; a < row.size(); ++a)
    if (row[a] > row[best]) best = a;
  return static_cast<int>(best);
}

std::vector<double>& QTable::row(const std::vector<int>& state) {
  auto it = rows_.find(state);
  if (it == rows_.end())
    it = rows_.emplace(state, std::vector<double>(num_actions_, 0.0)).first;
  return it->second;
}

std::vector<double>& PolicyTable::row(const std::vector<int>& state) {
  auto it = rows_.find(state);
  if (it == rows_.end())
    it = rows_.emplace(state, std::vector<double>(num_actions_, 1.0 / num_actions_)).first;
  return it->second;
}

void q_update(QTable& table, const std::vector<int>& state, int action, double reward,
              const std::vector<int>& next_state, const LearnerConfig& cfg) {
  const double next_value = table.max_value(next_state);
  auto& row = table.row(state);
  auto& q = row[static_cast<std::size_t>(action)];
  q = (1.0 - cfg.alpha) * q + cfg.alpha * (reward + cfg.gamma * next_value);
}

void phc_policy_update(PolicyTable& policy, const QTable& table, const std::vector<int>& state,
                       const LearnerConfig& cfg) {
  auto& row = policy.row(state);
  const std::size_t n = row.size();
  if (n <= 1) return;
  const std::size_t star = static_cast<std::size_t>(table.argmax(state));
  const double decrement = cfg.delta / static_cast<double>(n - 1);
  double sum = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    row[a] += a == star ? cfg.delta : -decrement;
    if (row[a] < 0.0) row[a] = 0.0;
    if (row[a] > 1.0) row[a] = 1.0;
    sum += row[a];
  }
  for (auto& p : row) p /= sum;
}

int phc_select_action(PolicyTable& policy, const std::vector<int>& state, Rng& rng) {
  const auto& row = policy.row(state);
  const double u = rng.uniform01();
  double acc = 0.0;
  for (std::size_t a = 0; a < row.size(); ++a) {
    acc += row[a];
    if (u < acc) return static_cast<int>(a);
  }
  for (std::size_t a = row.size(); a-- > 0;)
    if (row[a] > 0.0) return static_cast<int>(a);
  return 0;
}

namespace {

// Shared Algorithm-1 loop body; `select` picks the action index for a state key.
template <typename Select, typename Update>
RunResult defense_loop(Environment& env, const ActionSet& actions, long horizon, Select select,
                       Update update) {
  RunResult result;
  result.points.reserve(static_cast<std::size_t>(std::max<long>(horizon, 0)));
  const int levels = env.config().quant_levels;
  for (long k = 0; k < horizon; ++k) {
    const auto state = env.observe_state().key(levels);
    const int a = select(state);
    const SlotRecord rec = env.step(actions.at(static_cast<std::size_t>(a)));
    const auto next_state = env.observe_state().key(levels);
    update(state, a, rec.outcome.utility_defender, next_state);
    result.points.push_back({rec.slot, rec.outcome.protection_level, rec.outcome.utility_defender});
  }
  return result;
}

}  // namespace

RunResult run_phc_defense(Environment& env, const ActionSet& actions, const LearnerConfig& cfg,
                          long horizon, QTable& table, PolicyTable& policy, Rng& rng) {
  cfg.validate();
  return defense_loop(
      env, actions, horizon,
      [&](const std::vector<int>& s) { return phc_select_action(policy, s, rng); },
      [&](const std::vector<int>& s, int a, double reward, const std::vector<int>& s2) {
        q_update(table, s, a, reward, s2, cfg);
        phc_policy_update(policy, table, s, cfg);
      });
}

RunResult run_q_defense(Environment& env, const ActionSet& actions, const LearnerConfig& cfg,
                        long horizon, QTable& table, Rng& rng) {
  cfg.validate();
  return defense_loop(
      env, actions, horizon,
      [&](const std::vector<int>& s) {
        if (rng.uniform01() < cfg.epsilon) return rng.below(static_cast<int>(actions.size()));
        return table.argmax(s);
      },
      [&](const std::vector<int>& s, int a, double reward, const std::vector<int>& s2) {
        q_update(table, s, a, reward, s2, cfg);
      });
}

std::pair<QTable, PolicyTable> hotboot_phc(const LearnerConfig& cfg,
                                           const ScenarioSampler& sampler,
                                           const ActionSet& actions, Rng& rng) {
  cfg.validate();
  QTable table(actions.size());
  PolicyTable policy(actions.size());
  for (int run = 0; run < cfg.hotboot_runs; ++run) {
    Environment env = sampler(run);
    run_phc_defense(env, actions, cfg, cfg.hotboot_slots, table, policy, rng);
  }
  return {std::move(table), std::move(policy)};
}

uint64_t fnv1a64(const std::string& text) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

void write_rows(
    std::ofstream& out, const char* tag,
    const std::unordered_map<std::vector<int>, std::vector<double>, StateKeyHash>& rows) {
  // Sorted for reproducible files.
  std::vector<const std::vector<int>*> keys;
  keys.reserve(rows.size());
  for (const auto& [k, v] : rows) keys.push_back(&k);
  std::sort(keys.begin(), keys.end(),
            [](const auto* a, const auto* b) { return *a < *b; });
  for (const auto* key : keys) {
    out << tag;
    for (int v : *key) out << ' ' << v;
    out << " |";
    char buf[32];
    for (double v : rows.at(*key)) {
      std::snprintf(buf, sizeof buf, " %.17g", v);
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace

void save_tables(const std::string& path, uint64_t config_hash, const QTable& table,
                 const PolicyTable& policy) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_tables: cannot open " + path);
  char head[128];
  std::snprintf(head, sizeof head, "blotto-warm-tables 1\nconfig_hash %016" PRIx64 "\nactions %zu\n",
                config_hash, table.num_actions());
  out << head;
  write_rows(out, "Q", table.rows());
  write_rows(out, "P", policy.rows());
  if (!out) throw std::runtime_error("save_tables: write failed for " + path);
}

std::pair<QTable, PolicyTable> load_tables(const std::string& path, uint64_t config_hash) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_tables: cannot open " + path);
  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (magic != "blotto-warm-tables" || version != 1)
    throw std::runtime_error("load_tables: not a warm-table file: " + path);
  std::string field, hash_hex;
  in >> field >> hash_hex;
  if (field != "config_hash" || std::stoull(hash_hex, nullptr, 16) != config_hash)
    throw std::runtime_error("load_tables: config hash mismatch; the warm-start artifact was "
                             "built for a different scenario configuration");
  std::size_t num_actions = 0;
  in >> field >> num_actions;
  if (field != "actions") throw std::runtime_error("load_tables: malformed header");

  QTable table(num_actions);
  PolicyTable policy(num_actions);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    std::vector<int> key;
    std::string tok;
    while (ls >> tok && tok != "|") key.push_back(std::stoi(tok));
    std::vector<double> values;
    double v;
    while (ls >> v) values.push_back(v);
    if (values.size() != num_actions)
      throw std::runtime_error("load_tables: row width mismatch");
    if (tag == "Q")
      table.row(key) = values;
    else if (tag == "P")
      policy.row(key) = values;
    else
      throw std::runtime_error("load_tables: unknown row tag '" + tag + "'");
  }
  return {std::move(table), std::move(policy)};
}

}  // namespace blotto
