#include "blotto/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace blotto {

void GameConfig::validate() const {
  if (devices < 1) throw std::invalid_argument("GameConfig: devices must be >= 1");
  if (defense_budget < 1) throw std::invalid_argument("GameConfig: defense_budget must be >= 1");
  if (attack_budget < 1) throw std::invalid_argument("GameConfig: attack_budget must be >= 1");
  if (quant_levels < 1) throw std::invalid_argument("GameConfig: quant_levels must be >= 1");
  if (granularity < 1) throw std::invalid_argument("GameConfig: granularity must be >= 1");
  if (granularity > std::min(defense_budget, attack_budget))
    throw std::invalid_argument("GameConfig: granularity exceeds min(defense_budget, attack_budget)");
}

int Allocation::total() const { return std::accumulate(counts.begin(), counts.end(), 0); }

double DataSizeVector::total() const {
  return std::accumulate(levels.begin(), levels.end(), 0.0);
}

int sign(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

namespace {

void enumerate_recursive(int budget, int devices, int step, std::size_t cap,
                         std::vector<int>& prefix, std::vector<Allocation>& out) {
  if (static_cast<int>(prefix.size()) == devices) {
    if (out.size() >= cap)
      throw std::runtime_error("action space too large; increase granularity");
    out.push_back(Allocation{prefix, budget});
    return;
  }
  for (int c = 0; c <= budget; c += step) {
    prefix.push_back(c);
    enumerate_recursive(budget - c, devices, step, cap, prefix, out);
    prefix.pop_back();
  }
}

std::size_t count_recursive(int budget, int devices, int step, std::size_t limit) {
  if (devices == 0) return 1;
  std::size_t total = 0;
  for (int c = 0; c <= budget; c += step) {
    total += count_recursive(budget - c, devices - 1, step, limit);
    if (total > limit) return total;
  }
  return total;
}

}  // namespace

std::vector<Allocation> enumerate_actions(int budget, int devices, int step, std::size_t cap) {
  if (budget < 0 || devices < 1 || step < 1)
    throw std::invalid_argument("enumerate_actions: invalid budget/devices/step");
  std::vector<Allocation> out;
  std::vector<int> prefix;
  prefix.reserve(devices);
  enumerate_recursive(budget, devices, step, cap, prefix, out);
  return out;
}

std::size_t count_actions(int budget, int devices, int step) {
  return count_recursive(budget, devices, step, static_cast<std::size_t>(-1) / 2);
}

int auto_granularity(int budget, int devices, std::size_t cap) {
  for (int g = 1; g <= std::max(budget, 1); ++g) {
    if (count_recursive(budget, devices, g, cap) <= cap) return g;
  }
  return std::max(budget, 1);
}

double utility_defender(const DataSizeVector& data, const Allocation& defense,
                        const Allocation& attack) {
  const std::size_t d = data.levels.size();
  if (defense.counts.size() != d || attack.counts.size() != d)
    throw std::invalid_argument("utility_defender: dimension mismatch");
  double u = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    u += data.levels[i] * sign(defense.counts[i] - attack.counts[i]);
  return u;
}

double protection_level(const DataSizeVector& data, const Allocation& defense,
                        const Allocation& attack) {
  const double total = data.total();
  if (total <= 0.0) throw std::invalid_argument("protection_level: empty storage");
  return utility_defender(data, defense, attack) / total;
}

SlotOutcome resolve_slot(const DataSizeVector& data, const Allocation& defense,
                         const Allocation& attack) {
  SlotOutcome out;
  const std::size_t d = data.levels.size();
  if (defense.counts.size() != d || attack.counts.size() != d)
    throw std::invalid_argument("resolve_slot: dimension mismatch");
  out.per_device_sign.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    out.per_device_sign[i] = sign(defense.counts[i] - attack.counts[i]);
    out.utility_defender += data.levels[i] * out.per_device_sign[i];
  }
  out.utility_attacker = -out.utility_defender;
  const double total = data.total();
  out.protection_level = total > 0.0 ? out.utility_defender / total : 0.0;
  return out;
}

DataSizeVector quantize_data(const std::vector<double>& raw, int levels) {
  if (levels < 1) throw std::invalid_argument("quantize_data: levels must be >= 1");
  DataSizeVector out;
  out.levels.reserve(raw.size());
  for (double v : raw) {
    if (v < 0.0 || v > 1.0 || !std::isfinite(v))
      throw std::invalid_argument("quantize_data: entry outside [0,1]");
    // Nearest multiple of 1/L, ties up.
    const int l = static_cast<int>(std::floor(v * levels + 0.5));
    out.levels.push_back(static_cast<double>(l) / levels);
  }
  return out;
}

ActionSet::ActionSet(int budget, int devices, int step, std::size_t cap)
    : actions_(enumerate_actions(budget, devices, step, cap)),
      budget_(budget),
      devices_(devices),
      step_(step) {}

int ActionSet::index_of(const std::vector<int>& counts) const {
  if (static_cast<int>(counts.size()) != devices_) return -1;
  // Lexicographic order makes positional lookup a mixed-radix walk, but a
  // binary search is simpler and fast enough at the enforced cap.
  auto it = std::lower_bound(actions_.begin(), actions_.end(), counts,
                             [](const Allocation& a, const std::vector<int>& c) {
                               return a.counts < c;
                             });
  if (it == actions_.end() || it->counts != counts) return -1;
  return static_cast<int>(it - actions_.begin());
}

}  // namespace blotto
