#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace blotto {

// Static parameters of the one-shot CPU allocation game.
struct GameConfig {
  int devices = 1;         // D
  int defense_budget = 1;  // S_M
  int attack_budget = 1;   // S_N
  int quant_levels = 1;    // L
  int granularity = 1;     // g, actions restricted to multiples of g

  // Throws std::invalid_argument naming the violated bound.
  void validate() const;
};

// CPU counts per device. budget records the bound the vector was checked
// against; budget < 0 marks an analysis-only draw that skipped the check.
struct Allocation {
  std::vector<int> counts;
  int budget = 0;

  int total() const;
  bool operator==(const Allocation& other) const { return counts == other.counts; }
};

// Normalized per-device data sizes on the 1/L grid.
struct DataSizeVector {
  std::vector<double> levels;

  double total() const;
};

// Resolution of one slot of the zero-sum game.
struct SlotOutcome {
  double utility_defender = 0.0;
  double utility_attacker = 0.0;
  double protection_level = 0.0;
  std::vector<int> per_device_sign;
};

int sign(double x);

// All vectors of `devices` nonnegative multiples of `step` whose sum is at
// most `budget`, in lexicographic order. Throws std::runtime_error when the
// count would exceed `cap`.
std::vector<Allocation> enumerate_actions(int budget, int devices, int step,
                                          std::size_t cap = 100000);

std::size_t count_actions(int budget, int devices, int step);

// Smallest g >= 1 whose action set under (budget, devices, g) stays within cap.
int auto_granularity(int budget, int devices, std::size_t cap = 10000);

double utility_defender(const DataSizeVector& data, const Allocation& defense,
                        const Allocation& attack);

double protection_level(const DataSizeVector& data, const Allocation& defense,
                        const Allocation& attack);

SlotOutcome resolve_slot(const DataSizeVector& data, const Allocation& defense,
                         const Allocation& attack);

// Nearest-grid rounding, ties round up.
DataSizeVector quantize_data(const std::vector<double>& raw, int levels);

// Cached enumeration with index lookup, shared by the tabular and neural
// defenders.
class ActionSet {
 public:
  ActionSet() = default;
  ActionSet(int budget, int devices, int step, std::size_t cap = 100000);

  const std::vector<Allocation>& actions() const { return actions_; }
  std::size_t size() const { return actions_.size(); }
  const Allocation& at(std::size_t i) const { return actions_[i]; }
  // -1 when the vector is not in the set.
  int index_of(const std::vector<int>& counts) const;

 private:
  std::vector<Allocation> actions_;
  int budget_ = 0;
  int devices_ = 0;
  int step_ = 1;
};

}  // namespace blotto
