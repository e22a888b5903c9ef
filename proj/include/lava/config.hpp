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

#ifndef LAVA_CONFIG_HPP_
#define LAVA_CONFIG_HPP_

#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lava/harness.hpp"
#include "lava/scenario.hpp"

namespace lava {

// Overrides a run command can layer over a config file.
struct RunOverrides {
  std::optional<std::string> policy;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> noise_scoopnet;
  std::optional<double> noise_targetnet;
  std::optional<double> noise_depthnet;
};

struct Experiment {
  std::vector<TrialConfig> matrix;
  bool partial_credit = true;
  std::string demos_dir;
};

inline void apply_sim_overrides(const nlohmann::json& j, SimParams& p) {
  p.spoon_capacity_ml = j.value("spoon_capacity_ml", p.spoon_capacity_ml);
  p.spoon_length_m = j.value("spoon_length_m", p.spoon_length_m);
  p.footprint_radius_m = j.value("footprint_radius_m", p.footprint_radius_m);
  p.bite_depth_cm = j.value("bite_depth_cm", p.bite_depth_cm);
  p.depth_tolerance_cm = j.value("depth_tolerance_cm", p.depth_tolerance_cm);
  p.depth_error_max_cm = j.value("depth_error_max_cm", p.depth_error_max_cm);
  p.pickup_radius_m = j.value("pickup_radius_m", p.pickup_radius_m);
  p.contact_band_m = j.value("contact_band_m", p.contact_band_m);
  p.drift_max_m = j.value("drift_max_m", p.drift_max_m);
  p.breakage_p = j.value("breakage_p", p.breakage_p);
  p.push_speed_mps = j.value("push_speed_mps", p.push_speed_mps);
  p.stop_margin_m = j.value("stop_margin_m", p.stop_margin_m);
  p.align_slack_m = j.value("align_slack_m", p.align_slack_m);
  p.wall_band = j.value("wall_band", p.wall_band);
  p.center_band = j.value("center_band", p.center_band);
  p.lava_low_station_frac = j.value("lava_low_station_frac", p.lava_low_station_frac);
}

// Expands an experiment config file into a matrix of trial configs
// (scenarios x policies). Relative paths resolve against the config file's
// directory. Scenario entries are either a path string or an object
// {"file": ..., "max_attempts": ..., "clear_volume_ml": ...}.
inline Experiment load_experiment(const std::string& path,
                                  const RunOverrides& overrides = {}) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("config file " + path + ": " + e.what());
  }
  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path fp(p);
    return fp.is_absolute() ? fp.string() : (base / fp).string();
  };

  Experiment exp;
  exp.partial_credit = j.value("partial_credit", true);
  exp.demos_dir = resolve(j.value("demos_dir", std::string("demos")));

  TrialConfig defaults;
  defaults.trials = j.value("trials", 10);
  defaults.seed = j.value("seed", std::uint64_t{0});
  defaults.max_attempts = j.value("max_attempts", 25);
  defaults.clear_volume_ml = j.value("clear_volume_ml", 25.0);
  if (j.contains("noise")) {
    defaults.noise.scoopnet_acc = j["noise"].value("scoopnet", defaults.noise.scoopnet_acc);
    defaults.noise.targetnet_acc = j["noise"].value("targetnet", defaults.noise.targetnet_acc);
    defaults.noise.depthnet_acc = j["noise"].value("depthnet", defaults.noise.depthnet_acc);
  }
  if (j.contains("sim")) apply_sim_overrides(j["sim"], defaults.params);

  if (overrides.trials) defaults.trials = *overrides.trials;
  if (overrides.seed) defaults.seed = *overrides.seed;
  if (overrides.noise_scoopnet) defaults.noise.scoopnet_acc = *overrides.noise_scoopnet;
  if (overrides.noise_targetnet) defaults.noise.targetnet_acc = *overrides.noise_targetnet;
  if (overrides.noise_depthnet) defaults.noise.depthnet_acc = *overrides.noise_depthnet;

  for (double acc : {defaults.noise.scoopnet_acc, defaults.noise.targetnet_acc,
                     defaults.noise.depthnet_acc}) {
    if (acc < 0.0 || acc > 1.0) {
      throw std::runtime_error("config file " + path + ": accuracies must be in [0, 1]");
    }
  }

  std::vector<std::string> policies;
  if (overrides.policy) {
    policies.push_back(*overrides.policy);
  } else if (j.contains("policies")) {
    for (const auto& p : j["policies"]) policies.push_back(p.get<std::string>());
  } else {
    policies = {"lava"};
  }

  if (!j.contains("scenarios") || j["scenarios"].empty()) {
    throw std::runtime_error("config file " + path + ": no scenarios listed");
  }

  for (const auto& entry : j["scenarios"]) {
    TrialConfig cell = defaults;
    std::string file;
    if (entry.is_string()) {
      file = entry.get<std::string>();
    } else {
      file = entry.at("file").get<std::string>();
      cell.max_attempts = entry.value("max_attempts", cell.max_attempts);
      cell.clear_volume_ml = entry.value("clear_volume_ml", cell.clear_volume_ml);
      cell.trials = entry.value("trials", cell.trials);
    }
    if (cell.trials < 1 || cell.max_attempts < 1 || cell.clear_volume_ml < 0.0) {
      throw std::runtime_error("config file " + path +
                               ": trials and max_attempts must be >= 1, clear volume >= 0");
    }
    cell.scenario = load_scenario(resolve(file));
    for (const std::string& pol : policies) {
      TrialConfig cfg = cell;
      cfg.policy = policy_from_string(pol);
      exp.matrix.push_back(cfg);
    }
  }
  return exp;
}

}  // namespace lava

#endif  // LAVA_CONFIG_HPP_
