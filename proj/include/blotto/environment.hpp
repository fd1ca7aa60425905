#pragma once

#include <memory>
#include <vector>

#include "blotto/equilibrium.hpp"
#include "blotto/game.hpp"
#include "blotto/rng.hpp"

namespace blotto {

// RL state: previous (observed) attack allocation plus current data sizes.
struct GameState {
  Allocation prev_attack;
  DataSizeVector data;

  // Integer key for tabular learners: attack counts then 1/L grid indices.
  std::vector<int> key(int quant_levels) const;
};

struct ScheduleEvent {
  long slot = 0;
  bool multiply = true;            // false: replacement
  std::vector<double> values;      // single entry broadcasts to all devices
};

// Deterministic per-slot data sizes: raw values evolve by events, the exposed
// vector is re-quantized to the 1/L grid and clamped to [0,1].
struct DataSchedule {
  std::vector<double> initial_raw;
  std::vector<ScheduleEvent> events;  // slots strictly increasing

  void validate(int devices) const;
  std::vector<double> raw_at(long slot, long* clamped = nullptr) const;
  DataSizeVector data_at(long slot, int quant_levels) const;
};

enum class ObservationMode { Perfect, Noisy };

struct SlotRecord {
  long slot = 0;
  Allocation defense;
  Allocation attack;  // true attack, pre-observation
  SlotOutcome outcome;
  GameState state_before;
};

class AttackerPolicy {
 public:
  virtual ~AttackerPolicy() = default;
  virtual Allocation act(long slot, const Allocation& prev_defense,
                         const DataSizeVector& data, Rng& rng) = 0;
  // Called after the slot resolves; state transition is defense(k-1) -> defense(k).
  virtual void learn(const Allocation& prev_defense, const Allocation& attack,
                     double utility_attacker, const Allocation& defense) {}
};

// Samples uniformly from the attack action set each slot.
class StaticUniformAttacker : public AttackerPolicy {
 public:
  StaticUniformAttacker(int attack_budget, int devices, int step);
  Allocation act(long slot, const Allocation& prev_defense, const DataSizeVector& data,
                 Rng& rng) override;

 private:
  ActionSet actions_;
};

// Tabular epsilon-greedy Q-learner; state is the defender's previous allocation.
class GreedyQAttacker : public AttackerPolicy {
 public:
  GreedyQAttacker(int attack_budget, int devices, int step, double alpha = 0.9,
                  double gamma = 0.5, double epsilon = 0.1);
  Allocation act(long slot, const Allocation& prev_defense, const DataSizeVector& data,
                 Rng& rng) override;
  void learn(const Allocation& prev_defense, const Allocation& attack,
             double utility_attacker, const Allocation& defense) override;

 private:
  friend class InduceAndStrikeAttacker;
  const std::vector<double>* find_row(const std::vector<int>& key) const;
  std::vector<double>& row(const std::vector<int>& key);

  ActionSet actions_;
  double alpha_, gamma_, epsilon_;
  std::vector<std::pair<std::vector<int>, std::vector<double>>> table_;  // small, linear scan
};

// Modal defense allocation over the last `window` entries (ties -> most
// recent; window 0 -> full history), then the exhaustive best response to an
// atom strategy at that allocation.
Allocation strike_best_response(const std::vector<Allocation>& history, int window,
                                const DataSizeVector& data, int attack_budget, int step,
                                std::size_t cap = 100000);

// GreedyQ that, at each scheduled strike slot, best-responds to the defender's
// modal recent action and holds that attack for `strike_duration` slots.
class InduceAndStrikeAttacker : public AttackerPolicy {
 public:
  InduceAndStrikeAttacker(int attack_budget, int devices, int step,
                          std::vector<long> strike_slots, int window = 200,
                          int strike_duration = 200);
  Allocation act(long slot, const Allocation& prev_defense, const DataSizeVector& data,
                 Rng& rng) override;
  void learn(const Allocation& prev_defense, const Allocation& attack,
             double utility_attacker, const Allocation& defense) override;

 private:
  GreedyQAttacker inner_;
  int attack_budget_, step_, window_, strike_duration_;
  std::vector<long> strike_slots_;
  std::vector<Allocation> defense_history_;
  Allocation strike_action_;
  long strike_until_ = -1;
};

class Environment {
 public:
  Environment(GameConfig config, DataSchedule schedule,
              std::unique_ptr<AttackerPolicy> attacker, uint64_t seed,
              ObservationMode observation = ObservationMode::Perfect);
  Environment(Environment&&) = default;
  Environment& operator=(Environment&&) = default;

  SlotRecord step(const Allocation& defense);
  GameState observe_state() const;

  const GameConfig& config() const { return config_; }
  long slot() const { return slot_; }
  long clamp_events() const { return clamp_events_; }

 private:
  GameConfig config_;
  DataSchedule schedule_;
  std::unique_ptr<AttackerPolicy> attacker_;
  Rng rng_;
  ObservationMode observation_;
  long slot_ = 1;  // current (not yet resolved) slot
  long clamp_events_ = 0;
  Allocation prev_defense_;
  Allocation prev_attack_observed_;
  DataSizeVector data_;
};

}  // namespace blotto
