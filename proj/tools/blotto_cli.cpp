// Command-line harness: NE analysis tables, scenario simulation, hotbooting
// artifacts, and parameter sweeps. Output is CSV for external plotting.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "blotto/equilibrium.hpp"
#include "blotto/scenario.hpp"

namespace {

using namespace blotto;

DataSizeVector uniform_data(int devices, double value) {
  DataSizeVector b;
  b.levels.assign(devices, value);
  return b;
}

void print_pmfs(const char* who, const MixedStrategy& s) {
  for (std::size_t i = 0; i < s.pmfs.size(); ++i) {
    std::printf("pmf,%s,%zu", who, i);
    for (double p : s.pmfs[i]) std::printf(",%.12g", p);
    std::printf("\n");
  }
}

int cmd_ne_analyze(const std::string& regime, int sm, int sn, int d,
                   const std::vector<double>& b, const std::vector<int>& sm_list,
                   const std::vector<int>& d_list, bool pmfs) {
  std::vector<int> sms = sm_list.empty() ? std::vector<int>{sm} : sm_list;
  std::vector<int> ds = d_list.empty() ? std::vector<int>{d} : d_list;
  std::printf("regime,sm,sn,d,expected_protection,expected_utility\n");
  for (int cur_d : ds) {
    for (int cur_sm : sms) {
      GameConfig cfg;
      cfg.devices = cur_d;
      cfg.defense_budget = cur_sm;
      cfg.attack_budget = regime == "sym" ? cur_sm : sn;
      DataSizeVector data = b.empty() ? uniform_data(cur_d, 1.0) : DataSizeVector{b};
      if (static_cast<int>(data.levels.size()) != cur_d)
        throw std::invalid_argument("--b length must match the device count");
      const NeAnalysis ne = analyze_ne(cfg, data,
                                       regime == "sym" ? NeRegime::Symmetric : NeRegime::Asymmetric);
      std::printf("%s,%d,%d,%d,%.12g,%.12g\n", regime.c_str(), cur_sm, cfg.attack_budget, cur_d,
                  ne.expected_protection, ne.expected_utility_defender);
      if (pmfs && sms.size() == 1 && ds.size() == 1) {
        print_pmfs("defender", ne.defender_strategy);
        print_pmfs("attacker", ne.attacker_strategy);
      }
    }
  }
  return 0;
}

Scenario load_scenario(const std::string& file, const std::string& preset,
                       const std::vector<uint64_t>& seeds, long horizon) {
  if (file.empty() == preset.empty())
    throw std::invalid_argument("provide exactly one of a scenario file or --preset");
  Scenario s = file.empty() ? preset_scenario(preset) : parse_scenario_file(file);
  if (!seeds.empty()) s.seeds = seeds;
  if (horizon >= 0) s.horizon = horizon;
  s.validate();
  return s;
}

int cmd_simulate(const Scenario& scenario, const std::string& out_dir, const std::string& warm_path) {
  WarmStart warm;
  const WarmStart* warm_ptr = nullptr;
  if (!warm_path.empty()) {
    warm = load_hotboot_artifact(scenario, warm_path);
    warm_ptr = &warm;
  }
  const MetricsReport report = run_scenario(scenario, warm_ptr);
  for (const auto& path : write_report(out_dir, scenario, report))
    std::fprintf(stderr, "wrote %s\n", path.c_str());
  std::printf("mean_R_last_window,%.12g\nmean_uD_last_window,%.12g\n",
              report.mean_protection_window, report.mean_utility_window);
  return 0;
}

int cmd_sweep(Scenario base, const std::string& axis, const std::vector<int>& values,
              const std::vector<std::string>& defenders, const std::string& out_dir) {
  if (values.empty()) throw std::invalid_argument("sweep: empty values list");
  if (axis != "defense_budget" && axis != "devices")
    throw std::invalid_argument("sweep: axis must be defense_budget or devices");
  std::vector<DefenderKind> kinds;
  if (defenders.empty())
    kinds.push_back(base.defender);
  else
    for (const auto& name : defenders) kinds.push_back(defender_kind_from_string(name));

  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const std::string path = (fs::path(out_dir) / (base.name + ".sweep.csv")).string();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "axis,value,defender,mean_R,mean_uD\n";
  for (int value : values) {
    for (DefenderKind kind : kinds) {
      Scenario point = scenario_with_axis(base, axis, value);
      point.defender = kind;
      const MetricsReport report = run_scenario(point);
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s,%d,%s,%.12g,%.12g\n", axis.c_str(), value,
                    to_string(kind).c_str(), report.mean_protection_total,
                    report.mean_utility_total);
      out << buf;
      std::fprintf(stderr, "sweep point %s=%d defender=%s done\n", axis.c_str(), value,
                   to_string(kind).c_str());
    }
  }
  std::fprintf(stderr, "wrote %s\n", path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Colonel Blotto CPU-allocation game simulator"};
  app.require_subcommand(1);

  // ne-analyze
  auto* ne = app.add_subcommand("ne-analyze", "closed-form equilibrium analysis as CSV");
  std::string regime;
  int sm = 0, sn = 0, d = 0;
  std::vector<double> b;
  std::vector<int> sm_list, d_list;
  bool pmfs = false;
  ne->add_option("--regime", regime, "sym or asym")->required()
      ->check(CLI::IsMember({"sym", "asym"}));
  ne->add_option("--sm", sm, "defense CPUs");
  ne->add_option("--sn", sn, "attack CPUs (asym)");
  ne->add_option("--d", d, "device count");
  ne->add_option("--b", b, "per-device data sizes (sym)")->delimiter(',');
  ne->add_option("--sm-list", sm_list, "sweep over defense CPUs")->delimiter(',');
  ne->add_option("--d-list", d_list, "sweep over device counts")->delimiter(',');
  ne->add_flag("--pmfs", pmfs, "also print the marginal pmfs");

  // shared scenario options
  std::string scenario_file, preset, out_dir = ".", warm_path, artifact_out;
  std::vector<uint64_t> seeds;
  long horizon = -1;

  auto* sim = app.add_subcommand("simulate", "run a scenario and write metric CSV files");
  sim->add_option("scenario", scenario_file, "scenario config file (key=value)");
  sim->add_option("--preset", preset, "built-in scenario name");
  sim->add_option("--seed,--seeds", seeds, "override the seed list")->delimiter(',');
  sim->add_option("--horizon", horizon, "override the horizon");
  sim->add_option("--out-dir", out_dir, "output directory");
  sim->add_option("--warm", warm_path, "warm-start artifact from the hotboot subcommand");

  auto* hot = app.add_subcommand("hotboot", "train and write a warm-start artifact");
  hot->add_option("scenario", scenario_file, "scenario config file");
  hot->add_option("--preset", preset, "built-in scenario name");
  hot->add_option("--seed,--seeds", seeds, "override the seed list")->delimiter(',');
  hot->add_option("--out", artifact_out, "artifact path")->required();

  auto* sweep = app.add_subcommand("sweep", "run a scenario across an axis");
  std::string axis;
  std::vector<int> values;
  std::vector<std::string> defenders;
  sweep->add_option("scenario", scenario_file, "scenario config file");
  sweep->add_option("--preset", preset, "built-in scenario name");
  sweep->add_option("--axis", axis, "defense_budget or devices")->required();
  sweep->add_option("--values", values, "axis values")->required()->delimiter(',');
  sweep->add_option("--defenders", defenders, "defender kinds, default the scenario's")
      ->delimiter(',');
  sweep->add_option("--seed,--seeds", seeds, "override the seed list")->delimiter(',');
  sweep->add_option("--horizon", horizon, "override the horizon");
  sweep->add_option("--out-dir", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ne->parsed()) return cmd_ne_analyze(regime, sm, sn, d, b, sm_list, d_list, pmfs);
    const Scenario scenario = load_scenario(scenario_file, preset, seeds, horizon);
    if (sim->parsed()) return cmd_simulate(scenario, out_dir, warm_path);
    if (hot->parsed()) {
      write_hotboot_artifact(scenario, artifact_out);
      std::fprintf(stderr, "wrote %s\n", artifact_out.c_str());
      return 0;
    }
    if (sweep->parsed()) return cmd_sweep(scenario, axis, values, defenders, out_dir);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
