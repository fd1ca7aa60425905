#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blotto/environment.hpp"
#include "blotto/game.hpp"
#include "blotto/learning.hpp"
#include "blotto/neural.hpp"

namespace blotto {

enum class AttackerKind { StaticUniform, GreedyQ, InduceAndStrike };
enum class DefenderKind { Q, Phc, HotbootPhc, Dqn, HotbootDqn, NeMarginal, Random };

std::string to_string(AttackerKind kind);
std::string to_string(DefenderKind kind);
DefenderKind defender_kind_from_string(const std::string& name);

struct Scenario {
  std::string name = "scenario";
  GameConfig game;
  std::vector<double> initial_data;  // raw sizes in [0,1]
  std::vector<ScheduleEvent> events;
  AttackerKind attacker = AttackerKind::StaticUniform;
  DefenderKind defender = DefenderKind::Random;
  ObservationMode observation = ObservationMode::Perfect;
  long horizon = 1000;
  std::vector<uint64_t> seeds = {1};
  int metric_window = 500;   // summary window (last slots)
  int moving_avg = 50;       // plot smoothing window
  std::vector<long> strike_slots = {1000, 2000};
  int strike_window = 200;
  int strike_duration = 200;
  LearnerConfig learner;
  DqnConfig dqn;

  void validate() const;
  DataSchedule schedule() const;
  // Hash guarding warm-start artifacts; covers the fields the tables/network
  // dimensions depend on.
  uint64_t tabular_hash() const;
  uint64_t network_hash() const;
};

// key=value scenario file; '#' starts a comment; unknown keys are errors.
Scenario parse_scenario_file(const std::string& path);
Scenario parse_scenario_text(const std::string& text, const std::string& origin = "<string>");

// Built-in setups; names: fig4, fig5, fig6, fig7, fig4-desk, fig5-desk.
Scenario preset_scenario(const std::string& name);
std::vector<std::string> preset_names();

// Sweep-point derivation: axis is "defense_budget" or "devices". Resizes the
// data schedule for device changes and re-checks the action-set cap.
Scenario scenario_with_axis(Scenario base, const std::string& axis, int value);

struct SeedSeries {
  uint64_t seed = 0;
  std::vector<MetricPoint> points;
};

struct MetricsReport {
  std::vector<SeedSeries> per_seed;
  std::vector<MetricPoint> averaged;
  double mean_protection_window = 0.0;  // over the last metric_window slots
  double mean_utility_window = 0.0;
  double mean_protection_total = 0.0;
  double mean_utility_total = 0.0;
};

// Fresh environment for one run of the scenario.
Environment make_environment(const Scenario& scenario, uint64_t seed);

// Perturbed variants for hotbooting: same budgets and lattice, data shifted
// by up to one quantization level per device per phase, fresh attacker seeds.
ScenarioSampler make_hotboot_sampler(const Scenario& scenario, uint64_t seed);

struct WarmStart {
  std::optional<std::pair<QTable, PolicyTable>> tables;
  std::optional<NetworkParams> network;
};

// One seed of the configured defender; hotboot kinds without a provided warm
// artifact run their hotboot phase inline (deterministically from the seed).
SeedSeries run_scenario_seed(const Scenario& scenario, uint64_t seed,
                             const WarmStart* warm = nullptr);

// All seeds (in parallel), averaged by sorted seed order.
MetricsReport run_scenario(const Scenario& scenario, const WarmStart* warm = nullptr);

std::vector<MetricPoint> average_series(std::vector<SeedSeries> per_seed);
std::vector<MetricPoint> moving_average(const std::vector<MetricPoint>& series, int window);

void write_series_csv(const std::string& path, const std::vector<MetricPoint>& series);
std::vector<MetricPoint> read_series_csv(const std::string& path);

// Writes <name>.seed<i>.csv, <name>.avg.csv, <name>.ma.csv and
// <name>.summary.csv under out_dir; returns the written paths.
std::vector<std::string> write_report(const std::string& out_dir, const Scenario& scenario,
                                      const MetricsReport& report);

// Hotboot artifact for the scenario's defender kind (hotboot-phc / hotboot-dqn).
void write_hotboot_artifact(const Scenario& scenario, const std::string& out_path);
WarmStart load_hotboot_artifact(const Scenario& scenario, const std::string& path);

}  // namespace blotto
