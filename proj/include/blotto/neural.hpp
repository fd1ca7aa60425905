#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "blotto/environment.hpp"
#include "blotto/game.hpp"
#include "blotto/learning.hpp"
#include "blotto/rng.hpp"

namespace blotto {

struct DqnConfig {
  double gamma = 0.5;
  double epsilon = 0.1;
  double learning_rate = 1e-3;
  int window = 12;       // W
  int minibatch = 16;    // H
  int capacity = 10000;  // replay memory, FIFO
  int hotboot_runs = 10;
  int hotboot_slots = 500;
  int conv1_filters = 20;
  int conv2_filters = 40;
  int fc1_units = 180;
  bool relu_output = false;  // optional ReLU on the output layer
  int forced_side = 0;       // 0: derive the square side from W and D

  void validate() const;
  int input_side(int devices) const;
};

// Window of past (state, action) pairs plus the current state, scaled to
// [0,1], zero-padded, reshaped to a side x side tensor.
struct ExperienceSequence {
  int side = 0;
  std::vector<double> values;  // side*side, row-major

  bool operator==(const ExperienceSequence& o) const {
    return side == o.side && values == o.values;
  }
};

ExperienceSequence build_input(const std::deque<std::pair<GameState, Allocation>>& history,
                               const GameState& current, const GameConfig& game,
                               const DqnConfig& cfg);

// Two 2x2 stride-1 valid convolutions + two fully connected layers.
struct NetworkParams {
  int side = 0, f1 = 0, f2 = 0, hidden = 0, outputs = 0;
  bool relu_output = false;
  std::vector<double> conv1_w, conv1_b;  // [f1][2][2], [f1]
  std::vector<double> conv2_w, conv2_b;  // [f2][f1][2][2], [f2]
  std::vector<double> fc1_w, fc1_b;      // [hidden][(side-2)^2*f2], [hidden]
  std::vector<double> fc2_w, fc2_b;      // [outputs][hidden], [outputs]

  int flat_size() const { return (side - 2) * (side - 2) * f2; }
  std::size_t parameter_count() const;

  // Glorot-uniform weights, zero biases.
  static NetworkParams glorot(int side, int f1, int f2, int hidden, int outputs,
                              bool relu_output, Rng& rng);
};

struct ForwardCache {
  std::vector<double> conv1_pre, conv1_act;
  std::vector<double> conv2_pre, conv2_act;  // conv2_act doubles as the flat vector
  std::vector<double> fc1_pre, fc1_act;
  std::vector<double> output_pre, output;
};

ForwardCache forward(const NetworkParams& params, const ExperienceSequence& input);

// Gradients have the same layout as NetworkParams.
struct NetworkGrads {
  std::vector<double> conv1_w, conv1_b, conv2_w, conv2_b, fc1_w, fc1_b, fc2_w, fc2_b;

  static NetworkGrads zeros(const NetworkParams& params);
  void add_scaled(const NetworkGrads& other, double scale);
};

NetworkGrads backward(const NetworkParams& params, const ExperienceSequence& input,
                      const ForwardCache& cache, const std::vector<double>& output_gradient);

struct Transition {
  ExperienceSequence phi;
  int action = 0;
  double reward = 0.0;
  ExperienceSequence phi_next;
};

class ReplayMemory {
 public:
  explicit ReplayMemory(std::size_t capacity) : capacity_(capacity) {}

  void push(Transition t);
  std::size_t size() const { return items_.size(); }
  const Transition& at(std::size_t i) const { return items_[i]; }
  // Uniform without replacement; count <= size().
  std::vector<std::size_t> sample_indices(std::size_t count, Rng& rng) const;

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;
  std::vector<Transition> items_;
};

int dqn_select_action(const NetworkParams& params, const ExperienceSequence& phi, double epsilon,
                      Rng& rng);

// One SGD step on the mean squared error over an H-sample minibatch; targets
// use a parameter snapshot taken before the step. Returns the batch loss
// before the update.
double train_minibatch(NetworkParams& params, const ReplayMemory& memory, const DqnConfig& cfg,
                       Rng& rng);

RunResult run_dqn_defense(Environment& env, const ActionSet& actions, const DqnConfig& cfg,
                          long horizon, NetworkParams& params, ReplayMemory& memory, Rng& rng);

NetworkParams hotboot_dqn(const DqnConfig& cfg, const ScenarioSampler& sampler,
                          const ActionSet& actions, const GameConfig& game, Rng& rng);

// Flat binary artifact: header + little-endian 64-bit floats.
void save_network(const std::string& path, uint64_t config_hash, const NetworkParams& params);
NetworkParams load_network(const std::string& path, uint64_t config_hash);

}  // namespace blotto
