// Copyright 2026 The LAVA Sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "lava/config.hpp"
#include "lava/demos.hpp"
#include "lava/harness.hpp"
#include "lava/selftest.hpp"

namespace {

void print_aggregates(const lava::Report& report) {
  std::printf("%-22s %-9s %8s %10s %12s %10s\n", "config", "policy", "success",
              "time_s", "spill_ml", "breakage");
  for (const lava::Aggregate& a : report.aggregates) {
    std::printf("%-22s %-9s %5.3f±%.3f %10.2f %12.3f %10.2f\n", a.config_id.c_str(),
                a.policy.c_str(), a.success_rate, a.success_stderr, a.mean_time_s,
                a.mean_spillage_ml, a.mean_breakage);
  }
}

int cmd_run(const std::string& config_path, const lava::RunOverrides& overrides,
            const std::string& out_dir, const std::string& format) {
  const lava::Experiment exp = lava::load_experiment(config_path, overrides);
  const lava::TrajectoryLibrary library = lava::load_library(exp.demos_dir);
  const lava::Report report = lava::run_experiment(exp.matrix, library, exp.partial_credit);

  std::filesystem::create_directories(out_dir);
  const std::string ext = format == "json" ? ".json" : ".csv";
  const std::string out_path = (std::filesystem::path(out_dir) / ("report" + ext)).string();
  lava::emit_report(report, format, out_path);
  print_aggregates(report);
  std::cout << "report written to " << out_path << "\n";
  return 0;
}

int cmd_aggregate(const std::string& family_name, const std::string& demos_dir,
                  const std::string& out_path) {
  const lava::PrimitiveFamily family = lava::family_from_string(family_name);
  const std::vector<lava::Demonstration> demos = lava::load_demo_dir(demos_dir, family);
  const lava::SimParams params;
  const lava::Trajectory tmpl =
      lava::aggregate_demos(demos, static_cast<std::size_t>(params.trajectory_len));
  lava::save_trajectory(tmpl, out_path);
  std::cout << "aggregated " << demos.size() << " " << family_name
            << " demos into " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bowl-world scooping simulator and policy benchmark"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run an experiment config and emit a report");
  std::string config_path, out_dir = "out", format = "csv";
  lava::RunOverrides overrides;
  std::string policy;
  int trials = -1;
  std::int64_t seed = -1;
  double noise_scoopnet = -1.0, noise_targetnet = -1.0, noise_depthnet = -1.0;
  run->add_option("--config", config_path, "experiment config file")->required();
  run->add_option("--policy", policy, "restrict to one policy: lava | lava-low | fts");
  run->add_option("--trials", trials, "trials per config cell");
  run->add_option("--seed", seed, "base seed");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--noise-scoopnet", noise_scoopnet, "high-level classifier accuracy in [0,1]");
  run->add_option("--noise-targetnet", noise_targetnet, "target subregion accuracy in [0,1]");
  run->add_option("--noise-depthnet", noise_depthnet, "depth class accuracy in [0,1]");
  run->add_option("--format", format, "report format: csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  // aggregate-demos
  auto* agg = app.add_subcommand("aggregate-demos",
                                 "Aggregate demonstrations into a template trajectory");
  std::string family, demos_dir, agg_out;
  agg->add_option("--family", family, "wall-guided | direct")->required();
  agg->add_option("--demos", demos_dir, "directory of demo files")->required();
  agg->add_option("--out", agg_out, "output trajectory file")->required();

  // median-selftest
  auto* selftest = app.add_subcommand("median-selftest",
                                      "Run the geometric-median verification suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (!policy.empty()) overrides.policy = policy;
      if (trials >= 0) overrides.trials = trials;
      if (seed >= 0) overrides.seed = static_cast<std::uint64_t>(seed);
      if (noise_scoopnet >= 0.0) overrides.noise_scoopnet = noise_scoopnet;
      if (noise_targetnet >= 0.0) overrides.noise_targetnet = noise_targetnet;
      if (noise_depthnet >= 0.0) overrides.noise_depthnet = noise_depthnet;
      return cmd_run(config_path, overrides, out_dir, format);
    }
    if (agg->parsed()) {
      return cmd_aggregate(family, demos_dir, agg_out);
    }
    if (selftest->parsed()) {
      const bool ok = lava::print_selftest(lava::run_median_selftest(), std::cout);
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
