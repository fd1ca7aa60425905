#include "blotto/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace blotto {

bool MixedStrategy::valid(double tol) const {
  for (const auto& row : pmfs) {
    if (row.empty()) return false;
    double sum = 0.0;
    for (double p : row) {
      if (p < 0.0 || !std::isfinite(p)) return false;
      sum += p;
    }
    if (std::abs(sum - 1.0) > tol) return false;
  }
  return true;
}

MixedStrategy symmetric_ne(const GameConfig& config, const DataSizeVector& data) {
  config.validate();
  if (config.defense_budget != config.attack_budget)
    throw std::invalid_argument("symmetric regime inapplicable: S_M != S_N");
  const double total = data.total();
  if (total <= 0.0)
    throw std::invalid_argument("symmetric regime inapplicable: total data size is zero");
  if (static_cast<int>(data.levels.size()) != config.devices)
    throw std::invalid_argument("symmetric regime inapplicable: data dimension mismatch");
  for (std::size_t i = 0; i < data.levels.size(); ++i) {
    if (data.levels[i] >= total - data.levels[i])
      throw std::invalid_argument("symmetric regime inapplicable: device " + std::to_string(i) +
                                  " stores at least as much data as all others combined");
  }

  const double beta = 2.0 * config.defense_budget / total;
  MixedStrategy s;
  s.pmfs.resize(config.devices);
  for (int i = 0; i < config.devices; ++i) {
    const int top = static_cast<int>(std::floor(beta * data.levels[i]));
    auto& row = s.pmfs[i];
    row.assign(config.defense_budget + 1, 0.0);
    for (int j = 0; j <= top; ++j) row[j] = 1.0 / (top + 1);
  }
  return s;
}

std::pair<MixedStrategy, MixedStrategy> asymmetric_ne(const GameConfig& config) {
  config.validate();
  const int d = config.devices;
  const double ratio =
      static_cast<double>(config.attack_budget) / static_cast<double>(config.defense_budget);
  if (d < 3) throw std::invalid_argument("asymmetric regime inapplicable: D < 3");
  if (ratio < 2.0 / d || ratio > 1.0)
    throw std::invalid_argument("asymmetric regime inapplicable: S_N/S_M outside [2/D, 1]");
  const int top = 2 * config.defense_budget / d;  // F
  if (top < 1) throw std::invalid_argument("asymmetric regime inapplicable: floor(2*S_M/D) = 0");

  MixedStrategy defender, attacker;
  defender.pmfs.assign(d, std::vector<double>(config.defense_budget + 1, 0.0));
  attacker.pmfs.assign(d, std::vector<double>(config.defense_budget + 1, 0.0));
  for (int i = 0; i < d; ++i) {
    attacker.pmfs[i][0] = 1.0 - ratio;
    for (int j = 1; j <= top; ++j) {
      defender.pmfs[i][j] = 1.0 / top;
      attacker.pmfs[i][j] = ratio / top;
    }
  }
  return {defender, attacker};
}

double expected_sign_exact(const std::vector<double>& p, const std::vector<double>& q) {
  double total = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] == 0.0) continue;
    for (std::size_t k = 0; k < q.size(); ++k) {
      if (q[k] == 0.0) continue;
      total += p[j] * q[k] * sign(static_cast<double>(j) - static_cast<double>(k));
    }
  }
  return total;
}

double expected_protection_exact(const MixedStrategy& x, const MixedStrategy& y,
                                 const DataSizeVector& data) {
  const double total = data.total();
  if (total <= 0.0) throw std::invalid_argument("expected_protection_exact: empty storage");
  if (x.devices() != data.levels.size() || y.devices() != data.levels.size())
    throw std::invalid_argument("expected_protection_exact: dimension mismatch");
  double value = 0.0;
  for (std::size_t i = 0; i < data.levels.size(); ++i)
    value += data.levels[i] * expected_sign_exact(x.pmfs[i], y.pmfs[i]);
  return value / total;
}

NeAnalysis analyze_ne(const GameConfig& config, const DataSizeVector& data, NeRegime regime) {
  NeAnalysis out;
  out.regime = regime;
  if (regime == NeRegime::Symmetric) {
    out.defender_strategy = symmetric_ne(config, data);
    out.attacker_strategy = out.defender_strategy;
  } else {
    auto [x, y] = asymmetric_ne(config);
    out.defender_strategy = std::move(x);
    out.attacker_strategy = std::move(y);
  }
  out.expected_protection =
      expected_protection_exact(out.defender_strategy, out.attacker_strategy, data);
  out.expected_utility_defender = out.expected_protection * data.total();
  return out;
}

namespace {

int sample_row(const std::vector<double>& pmf, Rng& rng) {
  const double u = rng.uniform01();
  double acc = 0.0;
  for (std::size_t j = 0; j < pmf.size(); ++j) {
    acc += pmf[j];
    if (u < acc) return static_cast<int>(j);
  }
  // Rounding slack: fall back to the last supported value.
  for (std::size_t j = pmf.size(); j-- > 0;)
    if (pmf[j] > 0.0) return static_cast<int>(j);
  return 0;
}

}  // namespace

Allocation sample_marginal(const MixedStrategy& strategy, Rng& rng) {
  Allocation out;
  out.budget = -1;
  out.counts.reserve(strategy.devices());
  for (const auto& row : strategy.pmfs) out.counts.push_back(sample_row(row, rng));
  return out;
}

Allocation sample_feasible(const MixedStrategy& strategy, int budget, Rng& rng) {
  Allocation draw;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    draw = sample_marginal(strategy, rng);
    if (draw.total() <= budget) {
      draw.budget = budget;
      return draw;
    }
  }
  const int sum = draw.total();
  for (int& c : draw.counts)
    c = static_cast<int>(std::floor(static_cast<double>(c) * budget / sum));
  draw.budget = budget;
  return draw;
}

std::pair<Allocation, double> best_response_oracle(const MixedStrategy& opponent,
                                                   const DataSizeVector& data, int budget,
                                                   int step, std::size_t cap) {
  const std::size_t d = opponent.devices();
  if (data.levels.size() != d)
    throw std::invalid_argument("best_response_oracle: dimension mismatch");

  // ev[i][m] = E_{q_i}[sign(m - N_i)]; the per-allocation value is additive.
  std::vector<std::vector<double>> ev(d, std::vector<double>(budget + 1, 0.0));
  for (std::size_t i = 0; i < d; ++i) {
    const auto& q = opponent.pmfs[i];
    for (int m = 0; m <= budget; ++m) {
      double e = 0.0;
      for (std::size_t k = 0; k < q.size(); ++k)
        e += q[k] * sign(static_cast<double>(m) - static_cast<double>(k));
      ev[i][m] = e;
    }
  }

  const auto actions = enumerate_actions(budget, static_cast<int>(d), step, cap);
  const Allocation* best = nullptr;
  double best_value = 0.0;
  for (const auto& a : actions) {
    double value = 0.0;
    for (std::size_t i = 0; i < d; ++i) value += data.levels[i] * ev[i][a.counts[i]];
    if (best == nullptr || value > best_value) {
      best = &a;
      best_value = value;
    }
  }
  return {*best, best_value};  // lexicographic tie-break: enumeration order
}

}  // namespace blotto
