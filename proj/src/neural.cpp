#include "blotto/neural.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace blotto {

void DqnConfig::validate() const {
  if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("DqnConfig: gamma outside [0,1]");
  if (epsilon < 0.0 || epsilon > 1.0) throw std::invalid_argument("DqnConfig: epsilon outside [0,1]");
  if (window < 1) throw std::invalid_argument("DqnConfig: window must be >= 1");
  if (minibatch < 1) throw std::invalid_argument("DqnConfig: minibatch must be >= 1");
  if (capacity < minibatch) throw std::invalid_argument("DqnConfig: capacity below minibatch");
  if (learning_rate < 0.0) throw std::invalid_argument("DqnConfig: negative learning rate");
  if (conv1_filters < 1 || conv2_filters < 1 || fc1_units < 1)
    throw std::invalid_argument("DqnConfig: layer widths must be >= 1");
}

int DqnConfig::input_side(int devices) const {
  if (forced_side > 0) return forced_side;
  const int flat = window * 3 * devices + 2 * devices;
  int side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(flat))));
  return std::max(side, 3);  // the conv chain needs at least 3x3
}

ExperienceSequence build_input(const std::deque<std::pair<GameState, Allocation>>& history,
                               const GameState& current, const GameConfig& game,
                               const DqnConfig& cfg) {
  const int w = cfg.window;
  if (static_cast<int>(history.size()) < w)
    throw std::runtime_error("build_input: history shorter than the window");
  const double attack_scale = 1.0 / std::max(game.attack_budget, 1);
  const double defense_scale = 1.0 / std::max(game.defense_budget, 1);

  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(w * 3 * game.devices + 2 * game.devices));
  auto push_state = [&](const GameState& s) {
    for (int c : s.prev_attack.counts) flat.push_back(c * attack_scale);
    for (double level : s.data.levels) flat.push_back(level);
  };
  for (std::size_t i = history.size() - static_cast<std::size_t>(w); i < history.size(); ++i) {
    push_state(history[i].first);
    for (int c : history[i].second.counts) flat.push_back(c * defense_scale);
  }
  push_state(current);

  ExperienceSequence out;
  out.side = cfg.input_side(game.devices);
  const std::size_t padded = static_cast<std::size_t>(out.side) * out.side;
  if (flat.size() > padded)
    throw std::runtime_error("build_input: forced side too small for the flattened sequence");
  flat.resize(padded, 0.0);
  out.values = std::move(flat);
  return out;
}

std::size_t NetworkParams::parameter_count() const {
  return conv1_w.size() + conv1_b.size() + conv2_w.size() + conv2_b.size() + fc1_w.size() +
         fc1_b.size() + fc2_w.size() + fc2_b.size();
}

namespace {

void fill_glorot(std::vector<double>& w, int fan_in, int fan_out, Rng& rng) {
  const double bound = std::sqrt(6.0 / (fan_in + fan_out));
  for (auto& v : w) v = (2.0 * rng.uniform01() - 1.0) * bound;
}

inline double relu(double x) { return x > 0.0 ? x : 0.0; }
inline double relu_grad(double pre) { return pre > 0.0 ? 1.0 : 0.0; }

}  // namespace

NetworkParams NetworkParams::glorot(int side, int f1, int f2, int hidden, int outputs,
                                    bool relu_output, Rng& rng) {
  if (side < 3) throw std::invalid_argument("NetworkParams: input side must be >= 3");
  NetworkParams p;
  p.side = side;
  p.f1 = f1;
  p.f2 = f2;
  p.hidden = hidden;
  p.outputs = outputs;
  p.relu_output = relu_output;
  p.conv1_w.resize(static_cast<std::size_t>(f1) * 4);
  p.conv1_b.assign(f1, 0.0);
  p.conv2_w.resize(static_cast<std::size_t>(f2) * f1 * 4);
  p.conv2_b.assign(f2, 0.0);
  const int flat = p.flat_size();
  p.fc1_w.resize(static_cast<std::size_t>(hidden) * flat);
  p.fc1_b.assign(hidden, 0.0);
  p.fc2_w.resize(static_cast<std::size_t>(outputs) * hidden);
  p.fc2_b.assign(outputs, 0.0);
  fill_glorot(p.conv1_w, 4, 4 * f1, rng);
  fill_glorot(p.conv2_w, 4 * f1, 4 * f2, rng);
  fill_glorot(p.fc1_w, flat, hidden, rng);
  fill_glorot(p.fc2_w, hidden, outputs, rng);
  return p;
}

ForwardCache forward(const NetworkParams& p, const ExperienceSequence& input) {
  if (input.side != p.side) throw std::invalid_argument("forward: input side mismatch");
  const int s = p.side;
  const int s1 = s - 1;  // conv1 output side
  const int s2 = s - 2;  // conv2 output side
  ForwardCache c;

  c.conv1_pre.assign(static_cast<std::size_t>(p.f1) * s1 * s1, 0.0);
  c.conv1_act.resize(c.conv1_pre.size());
  for (int f = 0; f < p.f1; ++f) {
    const double* w = &p.conv1_w[static_cast<std::size_t>(f) * 4];
    for (int y = 0; y < s1; ++y) {
      for (int x = 0; x < s1; ++x) {
        const double* in = &input.values[static_cast<std::size_t>(y) * s + x];
        const double pre =
            p.conv1_b[f] + w[0] * in[0] + w[1] * in[1] + w[2] * in[s] + w[3] * in[s + 1];
        const std::size_t idx = (static_cast<std::size_t>(f) * s1 + y) * s1 + x;
        c.conv1_pre[idx] = pre;
        c.conv1_act[idx] = relu(pre);
      }
    }
  }

  c.conv2_pre.assign(static_cast<std::size_t>(p.f2) * s2 * s2, 0.0);
  c.conv2_act.resize(c.conv2_pre.size());
  for (int f = 0; f < p.f2; ++f) {
    for (int y = 0; y < s2; ++y) {
      for (int x = 0; x < s2; ++x) {
        double pre = p.conv2_b[f];
        for (int ch = 0; ch < p.f1; ++ch) {
          const double* w = &p.conv2_w[(static_cast<std::size_t>(f) * p.f1 + ch) * 4];
          const double* in = &c.conv1_act[(static_cast<std::size_t>(ch) * s1 + y) * s1 + x];
          pre += w[0] * in[0] + w[1] * in[1] + w[2] * in[s1] + w[3] * in[s1 + 1];
        }
        const std::size_t idx = (static_cast<std::size_t>(f) * s2 + y) * s2 + x;
        c.conv2_pre[idx] = pre;
        c.conv2_act[idx] = relu(pre);
      }
    }
  }

  const int flat = p.flat_size();
  c.fc1_pre.assign(p.hidden, 0.0);
  c.fc1_act.resize(p.hidden);
  for (int h = 0; h < p.hidden; ++h) {
    double pre = p.fc1_b[h];
    const double* w = &p.fc1_w[static_cast<std::size_t>(h) * flat];
    for (int j = 0; j < flat; ++j) pre += w[j] * c.conv2_act[j];
    c.fc1_pre[h] = pre;
    c.fc1_act[h] = relu(pre);
  }

  c.output_pre.assign(p.outputs, 0.0);
  c.output.resize(p.outputs);
  for (int o = 0; o < p.outputs; ++o) {
    double pre = p.fc2_b[o];
    const double* w = &p.fc2_w[static_cast<std::size_t>(o) * p.hidden];
    for (int h = 0; h < p.hidden; ++h) pre += w[h] * c.fc1_act[h];
    c.output_pre[o] = pre;
    c.output[o] = p.relu_output ? relu(pre) : pre;
  }
  return c;
}

NetworkGrads NetworkGrads::zeros(const NetworkParams& p) {
  NetworkGrads g;
  g.conv1_w.assign(p.conv1_w.size(), 0.0);
  g.conv1_b.assign(p.conv1_b.size(), 0.0);
  g.conv2_w.assign(p.conv2_w.size(), 0.0);
  g.conv2_b.assign(p.conv2_b.size(), 0.0);
  g.fc1_w.assign(p.fc1_w.size(), 0.0);
  g.fc1_b.assign(p.fc1_b.size(), 0.0);
  g.fc2_w.assign(p.fc2_w.size(), 0.0);
  g.fc2_b.assign(p.fc2_b.size(), 0.0);
  return g;
}

void NetworkGrads::add_scaled(const NetworkGrads& other, double scale) {
  auto axpy = [scale](std::vector<double>& dst, const std::vector<double>& src) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += scale * src[i];
  };
  axpy(conv1_w, other.conv1_w);
  axpy(conv1_b, other.conv1_b);
  axpy(conv2_w, other.conv2_w);
  axpy(conv2_b, other.conv2_b);
  axpy(fc1_w, other.fc1_w);
  axpy(fc1_b, other.fc1_b);
  axpy(fc2_w, other.fc2_w);
  axpy(fc2_b, other.fc2_b);
}

NetworkGrads backward(const NetworkParams& p, const ExperienceSequence& input,
                      const ForwardCache& c, const std::vector<double>& output_gradient) {
  if (static_cast<int>(output_gradient.size()) != p.outputs)
    throw std::invalid_argument("backward: output gradient size mismatch");
  const int s = p.side, s1 = s - 1, s2 = s - 2;
  const int flat = p.flat_size();
  NetworkGrads g = NetworkGrads::zeros(p);

  // FC2
  std::vector<double> d_out(p.outputs);
  for (int o = 0; o < p.outputs; ++o)
    d_out[o] = output_gradient[o] * (p.relu_output ? relu_grad(c.output_pre[o]) : 1.0);
  std::vector<double> d_fc1_act(p.hidden, 0.0);
  for (int o = 0; o < p.outputs; ++o) {
    g.fc2_b[o] = d_out[o];
    const double* w = &p.fc2_w[static_cast<std::size_t>(o) * p.hidden];
    double* gw = &g.fc2_w[static_cast<std::size_t>(o) * p.hidden];
    for (int h = 0; h < p.hidden; ++h) {
      gw[h] = d_out[o] * c.fc1_act[h];
      d_fc1_act[h] += d_out[o] * w[h];
    }
  }

  // FC1
  std::vector<double> d_flat(flat, 0.0);
  for (int h = 0; h < p.hidden; ++h) {
    const double d_pre = d_fc1_act[h] * relu_grad(c.fc1_pre[h]);
    g.fc1_b[h] = d_pre;
    if (d_pre == 0.0) continue;
    const double* w = &p.fc1_w[static_cast<std::size_t>(h) * flat];
    double* gw = &g.fc1_w[static_cast<std::size_t>(h) * flat];
    for (int j = 0; j < flat; ++j) {
      gw[j] = d_pre * c.conv2_act[j];
      d_flat[j] += d_pre * w[j];
    }
  }

  // Conv2
  std::vector<double> d_conv1_act(c.conv1_act.size(), 0.0);
  for (int f = 0; f < p.f2; ++f) {
    for (int y = 0; y < s2; ++y) {
      for (int x = 0; x < s2; ++x) {
        const std::size_t idx = (static_cast<std::size_t>(f) * s2 + y) * s2 + x;
        const double d_pre = d_flat[idx] * relu_grad(c.conv2_pre[idx]);
        if (d_pre == 0.0) continue;
        g.conv2_b[f] += d_pre;
        for (int ch = 0; ch < p.f1; ++ch) {
          const std::size_t wbase = (static_cast<std::size_t>(f) * p.f1 + ch) * 4;
          const std::size_t ibase = (static_cast<std::size_t>(ch) * s1 + y) * s1 + x;
          g.conv2_w[wbase + 0] += d_pre * c.conv1_act[ibase];
          g.conv2_w[wbase + 1] += d_pre * c.conv1_act[ibase + 1];
          g.conv2_w[wbase + 2] += d_pre * c.conv1_act[ibase + s1];
          g.conv2_w[wbase + 3] += d_pre * c.conv1_act[ibase + s1 + 1];
          d_conv1_act[ibase + 0] += d_pre * p.conv2_w[wbase + 0];
          d_conv1_act[ibase + 1] += d_pre * p.conv2_w[wbase + 1];
          d_conv1_act[ibase + s1] += d_pre * p.conv2_w[wbase + 2];
          d_conv1_act[ibase + s1 + 1] += d_pre * p.conv2_w[wbase + 3];
        }
      }
    }
  }

  // Conv1
  for (int f = 0; f < p.f1; ++f) {
    for (int y = 0; y < s1; ++y) {
      for (int x = 0; x < s1; ++x) {
        const std::size_t idx = (static_cast<std::size_t>(f) * s1 + y) * s1 + x;
        const double d_pre = d_conv1_act[idx] * relu_grad(c.conv1_pre[idx]);
        if (d_pre == 0.0) continue;
        g.conv1_b[f] += d_pre;
        const std::size_t wbase = static_cast<std::size_t>(f) * 4;
        const double* in = &input.values[static_cast<std::size_t>(y) * s + x];
        g.conv1_w[wbase + 0] += d_pre * in[0];
        g.conv1_w[wbase + 1] += d_pre * in[1];
        g.conv1_w[wbase + 2] += d_pre * in[s];
        g.conv1_w[wbase + 3] += d_pre * in[s + 1];
      }
    }
  }
  return g;
}

void ReplayMemory::push(Transition t) {
  if (items_.size() < capacity_) {
    items_.push_back(std::move(t));
  } else {
    items_[head_] = std::move(t);
    head_ = (head_ + 1) % capacity_;
  }
}

std::vector<std::size_t> ReplayMemory::sample_indices(std::size_t count, Rng& rng) const {
  if (count > items_.size())
    throw std::runtime_error("ReplayMemory: sample larger than the stored set");
  std::vector<std::size_t> idx(items_.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(static_cast<int>(idx.size() - i)));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(count);
  return idx;
}

int dqn_select_action(const NetworkParams& params, const ExperienceSequence& phi, double epsilon,
                      Rng& rng) {
  const auto cache = forward(params, phi);
  std::size_t best = 0;
  for (std::size_t a = 1; a < cache.output.size(); ++a)
    if (cache.output[a] > cache.output[best]) best = a;
  const int n = static_cast<int>(cache.output.size());
  if (n <= 1 || rng.uniform01() >= epsilon) return static_cast<int>(best);
  // Exploration spreads over the non-argmax actions only.
  int pick = rng.below(n - 1);
  if (pick >= static_cast<int>(best)) ++pick;
  return pick;
}

double train_minibatch(NetworkParams& params, const ReplayMemory& memory, const DqnConfig& cfg,
                       Rng& rng) {
  const std::size_t h = static_cast<std::size_t>(cfg.minibatch);
  if (memory.size() < h) throw std::runtime_error("train_minibatch: replay memory underfull");
  const NetworkParams snapshot = params;  // targets use pre-step parameters
  const auto picks = memory.sample_indices(h, rng);

  NetworkGrads total = NetworkGrads::zeros(params);
  double loss = 0.0;
  for (std::size_t i : picks) {
    const Transition& t = memory.at(i);
    const auto next = forward(snapshot, t.phi_next);
    const double next_max = *std::max_element(next.output.begin(), next.output.end());
    const double target = t.reward + cfg.gamma * next_max;

    const auto cache = forward(params, t.phi);
    const double err = cache.output[static_cast<std::size_t>(t.action)] - target;
    loss += err * err / static_cast<double>(h);
    std::vector<double> d_out(params.outputs, 0.0);
    d_out[static_cast<std::size_t>(t.action)] = 2.0 * err / static_cast<double>(h);
    total.add_scaled(backward(params, t.phi, cache, d_out), 1.0);
  }

  auto step = [&](std::vector<double>& w, const std::vector<double>& g) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= cfg.learning_rate * g[i];
  };
  step(params.conv1_w, total.conv1_w);
  step(params.conv1_b, total.conv1_b);
  step(params.conv2_w, total.conv2_w);
  step(params.conv2_b, total.conv2_b);
  step(params.fc1_w, total.fc1_w);
  step(params.fc1_b, total.fc1_b);
  step(params.fc2_w, total.fc2_w);
  step(params.fc2_b, total.fc2_b);
  return loss;
}

RunResult run_dqn_defense(Environment& env, const ActionSet& actions, const DqnConfig& cfg,
                          long horizon, NetworkParams& params, ReplayMemory& memory, Rng& rng) {
  cfg.validate();
  RunResult result;
  result.points.reserve(static_cast<std::size_t>(std::max<long>(horizon, 0)));
  const GameConfig& game = env.config();
  std::deque<std::pair<GameState, Allocation>> history;

  std::optional<ExperienceSequence> phi;
  int chosen = 0;
  for (long k = 1; k <= horizon; ++k) {
    const GameState state = env.observe_state();
    phi.reset();
    if (static_cast<int>(history.size()) >= cfg.window) {
      phi = build_input(history, state, game, cfg);
      chosen = dqn_select_action(params, *phi, cfg.epsilon, rng);
    } else {
      chosen = rng.below(static_cast<int>(actions.size()));
    }
    const SlotRecord rec = env.step(actions.at(static_cast<std::size_t>(chosen)));
    history.emplace_back(state, rec.defense);
    while (static_cast<int>(history.size()) > cfg.window) history.pop_front();

    if (phi.has_value()) {
      const ExperienceSequence phi_next = build_input(history, env.observe_state(), game, cfg);
      memory.push(Transition{std::move(*phi), chosen, rec.outcome.utility_defender, phi_next});
      if (memory.size() >= static_cast<std::size_t>(cfg.minibatch))
        train_minibatch(params, memory, cfg, rng);
    }
    result.points.push_back({rec.slot, rec.outcome.protection_level, rec.outcome.utility_defender});
  }
  return result;
}

NetworkParams hotboot_dqn(const DqnConfig& cfg, const ScenarioSampler& sampler,
                          const ActionSet& actions, const GameConfig& game, Rng& rng) {
  cfg.validate();
  if (cfg.hotboot_runs < 1) throw std::invalid_argument("hotboot_dqn: hotboot_runs must be >= 1");
  NetworkParams params =
      NetworkParams::glorot(cfg.input_side(game.devices), cfg.conv1_filters, cfg.conv2_filters,
                            cfg.fc1_units, static_cast<int>(actions.size()), cfg.relu_output, rng);
  ReplayMemory dataset(static_cast<std::size_t>(cfg.capacity));
  for (int run = 0; run < cfg.hotboot_runs; ++run) {
    Environment env = sampler(run);
    run_dqn_defense(env, actions, cfg, cfg.hotboot_slots, params, dataset, rng);
  }
  return params;
}

namespace {

void write_block(std::ofstream& out, const std::vector<double>& v) {
  const uint64_t n = v.size();
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(n * sizeof(double)));
}

std::vector<double> read_block(std::ifstream& in) {
  uint64_t n = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  std::vector<double> v(n);
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(double)));
  if (!in) throw std::runtime_error("load_network: truncated file");
  return v;
}

constexpr char kMagic[8] = {'B', 'L', 'T', 'N', 'E', 'T', '0', '1'};

}  // namespace

void save_network(const std::string& path, uint64_t config_hash, const NetworkParams& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_network: cannot open " + path);
  out.write(kMagic, sizeof kMagic);
  out.write(reinterpret_cast<const char*>(&config_hash), sizeof config_hash);
  const int32_t dims[6] = {p.side, p.f1, p.f2, p.hidden, p.outputs, p.relu_output ? 1 : 0};
  out.write(reinterpret_cast<const char*>(dims), sizeof dims);
  write_block(out, p.conv1_w);
  write_block(out, p.conv1_b);
  write_block(out, p.conv2_w);
  write_block(out, p.conv2_b);
  write_block(out, p.fc1_w);
  write_block(out, p.fc1_b);
  write_block(out, p.fc2_w);
  write_block(out, p.fc2_b);
  if (!out) throw std::runtime_error("save_network: write failed for " + path);
}

NetworkParams load_network(const std::string& path, uint64_t config_hash) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_network: cannot open " + path);
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw std::runtime_error("load_network: not a network artifact: " + path);
  uint64_t hash = 0;
  in.read(reinterpret_cast<char*>(&hash), sizeof hash);
  if (hash != config_hash)
    throw std::runtime_error("load_network: config hash mismatch; the warm-start artifact was "
                             "built for a different scenario configuration");
  int32_t dims[6];
  in.read(reinterpret_cast<char*>(dims), sizeof dims);
  NetworkParams p;
  p.side = dims[0];
  p.f1 = dims[1];
  p.f2 = dims[2];
  p.hidden = dims[3];
  p.outputs = dims[4];
  p.relu_output = dims[5] != 0;
  p.conv1_w = read_block(in);
  p.conv1_b = read_block(in);
  p.conv2_w = read_block(in);
  p.conv2_b = read_block(in);
  p.fc1_w = read_block(in);
  p.fc1_b = read_block(in);
  p.fc2_w = read_block(in);
  p.fc2_b = read_block(in);
  return p;
}

}  // namespace blotto
