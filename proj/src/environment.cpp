#include "blotto/environment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blotto {

std::vector<int> GameState::key(int quant_levels) const {
  std::vector<int> k;
  k.reserve(prev_attack.counts.size() + data.levels.size());
  for (int c : prev_attack.counts) k.push_back(c);
  for (double level : data.levels)
    k.push_back(static_cast<int>(std::lround(level * quant_levels)));
  return k;
}

void DataSchedule::validate(int devices) const {
  if (static_cast<int>(initial_raw.size()) != devices)
    throw std::invalid_argument("DataSchedule: initial size vector has wrong dimension");
  for (double v : initial_raw)
    if (v < 0.0 || v > 1.0) throw std::invalid_argument("DataSchedule: initial size outside [0,1]");
  long prev = 0;
  for (const auto& e : events) {
    if (e.slot <= prev) throw std::invalid_argument("DataSchedule: event slots must be strictly increasing");
    prev = e.slot;
    if (e.values.size() != 1 && static_cast<int>(e.values.size()) != devices)
      throw std::invalid_argument("DataSchedule: event value vector has wrong dimension");
  }
}

std::vector<double> DataSchedule::raw_at(long slot, long* clamped) const {
  std::vector<double> raw = initial_raw;
  for (const auto& e : events) {
    if (e.slot > slot) break;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      const double v = e.values.size() == 1 ? e.values[0] : e.values[i];
      raw[i] = e.multiply ? raw[i] * v : v;
      if (raw[i] > 1.0 || raw[i] < 0.0) {
        if (clamped) ++*clamped;
        raw[i] = std::clamp(raw[i], 0.0, 1.0);
      }
    }
  }
  return raw;
}

DataSizeVector DataSchedule::data_at(long slot, int quant_levels) const {
  return quantize_data(raw_at(slot), quant_levels);
}

StaticUniformAttacker::StaticUniformAttacker(int attack_budget, int devices, int step)
    : actions_(attack_budget, devices, step) {}

Allocation StaticUniformAttacker::act(long, const Allocation&, const DataSizeVector&, Rng& rng) {
  return actions_.at(static_cast<std::size_t>(rng.below(static_cast<int>(actions_.size()))));
}

GreedyQAttacker::GreedyQAttacker(int attack_budget, int devices, int step, double alpha,
                                 double gamma, double epsilon)
    : actions_(attack_budget, devices, step), alpha_(alpha), gamma_(gamma), epsilon_(epsilon) {}

const std::vector<double>* GreedyQAttacker::find_row(const std::vector<int>& key) const {
  for (const auto& [k, v] : table_)
    if (k == key) return &v;
  return nullptr;
}

std::vector<double>& GreedyQAttacker::row(const std::vector<int>& key) {
  for (auto& [k, v] : table_)
    if (k == key) return v;
  table_.emplace_back(key, std::vector<double>(actions_.size(), 0.0));
  return table_.back().second;
}

Allocation GreedyQAttacker::act(long, const Allocation& prev_defense, const DataSizeVector&,
                                Rng& rng) {
  if (rng.uniform01() < epsilon_)
    return actions_.at(static_cast<std::size_t>(rng.below(static_cast<int>(actions_.size()))));
  const auto* q = find_row(prev_defense.counts);
  if (q == nullptr) return actions_.at(0);
  std::size_t best = 0;
  for (std::size_t a = 1; a < q->size(); ++a)
    if ((*q)[a] > (*q)[best]) best = a;
  return actions_.at(best);
}

void GreedyQAttacker::learn(const Allocation& prev_defense, const Allocation& attack,
                            double utility_attacker, const Allocation& defense) {
  const int a = actions_.index_of(attack.counts);
  if (a < 0) return;  // struck with an action outside the lattice
  double next_value = 0.0;
  if (const auto* next = find_row(defense.counts))
    next_value = *std::max_element(next->begin(), next->end());
  auto& q = row(prev_defense.counts);
  q[a] = (1.0 - alpha_) * q[a] + alpha_ * (utility_attacker + gamma_ * next_value);
}

Allocation strike_best_response(const std::vector<Allocation>& history, int window,
                                const DataSizeVector& data, int attack_budget, int step,
                                std::size_t cap) {
  if (history.empty()) throw std::invalid_argument("strike_best_response: empty history");
  const std::size_t span = (window <= 0 || static_cast<std::size_t>(window) > history.size())
                               ? history.size()
                               : static_cast<std::size_t>(window);
  const std::size_t begin = history.size() - span;

  // Modal allocation; ties resolved toward the most recent occurrence.
  std::vector<int> modal;
  std::size_t best_count = 0, best_last = 0;
  for (std::size_t i = begin; i < history.size(); ++i) {
    std::size_t count = 0, last = i;
    for (std::size_t j = begin; j < history.size(); ++j) {
      if (history[j].counts == history[i].counts) {
        ++count;
        last = j;
      }
    }
    if (count > best_count || (count == best_count && last > best_last)) {
      best_count = count;
      best_last = last;
      modal = history[i].counts;
    }
  }

  MixedStrategy atom;
  atom.pmfs.resize(modal.size());
  for (std::size_t i = 0; i < modal.size(); ++i) {
    atom.pmfs[i].assign(modal[i] + 1, 0.0);
    atom.pmfs[i][modal[i]] = 1.0;
  }
  return best_response_oracle(atom, data, attack_budget, step, cap).first;
}

InduceAndStrikeAttacker::InduceAndStrikeAttacker(int attack_budget, int devices, int step,
                                                 std::vector<long> strike_slots, int window,
                                                 int strike_duration)
    : inner_(attack_budget, devices, step),
      attack_budget_(attack_budget),
      step_(step),
      window_(window),
      strike_duration_(strike_duration),
      strike_slots_(std::move(strike_slots)) {}

Allocation InduceAndStrikeAttacker::act(long slot, const Allocation& prev_defense,
                                        const DataSizeVector& data, Rng& rng) {
  const bool strike_now =
      std::find(strike_slots_.begin(), strike_slots_.end(), slot) != strike_slots_.end();
  if (strike_now && !defense_history_.empty()) {
    strike_action_ = strike_best_response(defense_history_, window_, data, attack_budget_, step_);
    strike_until_ = slot + strike_duration_;
  }
  if (slot < strike_until_ && !strike_action_.counts.empty()) return strike_action_;
  return inner_.act(slot, prev_defense, data, rng);
}

void InduceAndStrikeAttacker::learn(const Allocation& prev_defense, const Allocation& attack,
                                    double utility_attacker, const Allocation& defense) {
  defense_history_.push_back(defense);
  inner_.learn(prev_defense, attack, utility_attacker, defense);
}

Environment::Environment(GameConfig config, DataSchedule schedule,
                         std::unique_ptr<AttackerPolicy> attacker, uint64_t seed,
                         ObservationMode observation)
    : config_(config),
      schedule_(std::move(schedule)),
      attacker_(std::move(attacker)),
      rng_(seed),
      observation_(observation) {
  config_.validate();
  schedule_.validate(config_.devices);
  prev_defense_ = Allocation{std::vector<int>(config_.devices, 0), config_.defense_budget};
  prev_attack_observed_ = Allocation{std::vector<int>(config_.devices, 0), config_.attack_budget};
  data_ = schedule_.data_at(slot_, config_.quant_levels);
}

GameState Environment::observe_state() const { return GameState{prev_attack_observed_, data_}; }

SlotRecord Environment::step(const Allocation& defense) {
  if (static_cast<int>(defense.counts.size()) != config_.devices)
    throw std::invalid_argument("env_step: defense allocation has wrong dimension");
  int sum = 0;
  for (int c : defense.counts) {
    if (c < 0) throw std::invalid_argument("env_step: negative defense count");
    sum += c;
  }
  if (sum > config_.defense_budget)
    throw std::invalid_argument("env_step: defense allocation exceeds budget");

  SlotRecord rec;
  rec.slot = slot_;
  rec.state_before = observe_state();
  rec.defense = defense;
  rec.attack = attacker_->act(slot_, prev_defense_, data_, rng_);
  rec.outcome = resolve_slot(data_, defense, rec.attack);
  attacker_->learn(prev_defense_, rec.attack, rec.outcome.utility_attacker, defense);

  if (observation_ == ObservationMode::Perfect) {
    prev_attack_observed_ = rec.attack;
  } else {
    // A device's attack count is revealed only where the attack overwhelmed
    // the scan; everywhere else the defender sees 0.
    prev_attack_observed_.counts.assign(config_.devices, 0);
    for (int i = 0; i < config_.devices; ++i)
      if (rec.attack.counts[i] > defense.counts[i])
        prev_attack_observed_.counts[i] = rec.attack.counts[i];
  }
  prev_defense_ = defense;
  ++slot_;
  long clamped = 0;
  const auto raw = schedule_.raw_at(slot_, &clamped);
  clamp_events_ += clamped;
  data_ = quantize_data(raw, config_.quant_levels);
  return rec;
}

}  // namespace blotto
