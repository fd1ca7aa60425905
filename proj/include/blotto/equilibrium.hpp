#pragma once

#include <utility>
#include <vector>

#include "blotto/game.hpp"
#include "blotto/rng.hpp"

namespace blotto {

// Per-device marginal probability mass functions over CPU counts {0..S}.
struct MixedStrategy {
  std::vector<std::vector<double>> pmfs;

  std::size_t devices() const { return pmfs.size(); }
  bool valid(double tol = 1e-12) const;
};

enum class NeRegime { Symmetric, Asymmetric };

struct NeAnalysis {
  MixedStrategy defender_strategy;
  MixedStrategy attacker_strategy;
  double expected_protection = 0.0;
  double expected_utility_defender = 0.0;
  NeRegime regime = NeRegime::Symmetric;
};

// Equal-budget equilibrium marginals: row i uniform over {0..floor(beta*B_i)},
// beta = 2*S_M/B_hat.
// Both players use this strategy. Requires S_M == S_N, B_hat > 0, and no
// dominating device (B_i < sum of the others).
MixedStrategy symmetric_ne(const GameConfig& config, const DataSizeVector& data);

// Weak-attacker equilibrium marginals with F = floor(2*S_M/D): defender uniform on {1..F},
// attacker has an atom 1 - S_N/S_M at 0 and S_N/(S_M*F) on each of {1..F}.
// Requires 2/D <= S_N/S_M <= 1, D >= 3, equal data sizes.
std::pair<MixedStrategy, MixedStrategy> asymmetric_ne(const GameConfig& config);

// Exact double sum of sign(j - k) under independent pmfs p, q.
double expected_sign_exact(const std::vector<double>& p, const std::vector<double>& q);

// (1/B_hat) * sum_i B_i * expected_sign_exact(x_i, y_i).
double expected_protection_exact(const MixedStrategy& x, const MixedStrategy& y,
                                 const DataSizeVector& data);

NeAnalysis analyze_ne(const GameConfig& config, const DataSizeVector& data, NeRegime regime);

// Independent per-device draw; may exceed the budget, so the returned
// Allocation carries budget = -1 (analysis-only).
Allocation sample_marginal(const MixedStrategy& strategy, Rng& rng);

// Rejection-samples sample_marginal until the sum fits the budget (up to 1000
// attempts), then falls back to rescale-and-floor of the last draw.
Allocation sample_feasible(const MixedStrategy& strategy, int budget, Rng& rng);

// Exhaustive best response to the opponent's marginals. Returns the
// lexicographically smallest argmax and its exact expected utility.
std::pair<Allocation, double> best_response_oracle(const MixedStrategy& opponent,
                                                   const DataSizeVector& data, int budget,
                                                   int step, std::size_t cap = 100000);

}  // namespace blotto
