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

#ifndef LAVA_HARNESS_HPP_
#define LAVA_HARNESS_HPP_

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lava/bowl_sim.hpp"
#include "lava/demos.hpp"
#include "lava/perception.hpp"
#include "lava/policy.hpp"
#include "lava/scenario.hpp"

namespace lava {

// One experiment cell: a scenario run by one policy for a number of trials.
struct TrialConfig {
  Scenario scenario;
  PolicyKind policy = PolicyKind::lava;
  int trials = 10;
  std::uint64_t seed = 0;
  NoiseModel noise;
  int max_attempts = 25;
  double clear_volume_ml = 25.0;
  SimParams params;
};

enum class Outcome { success, partial, failure };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::success: return "success";
    case Outcome::partial: return "partial";
    default: return "failure";
  }
}

inline Outcome outcome_from_string(const std::string& s) {
  if (s == "success") return Outcome::success;
  if (s == "partial") return Outcome::partial;
  if (s == "failure") return Outcome::failure;
  throw std::invalid_argument("unknown outcome: " + s);
}

// Total classification of a finished episode: success needs a cleared bowl
// with zero spillage and zero breakage; clearing with spillage (but nothing
// broken) counts as partial; everything else is a failure.
inline Outcome classify_outcome(bool cleared, double spillage_ml, int breakage) {
  if (cleared && spillage_ml == 0.0 && breakage == 0) return Outcome::success;
  if (cleared && spillage_ml > 0.0 && breakage == 0) return Outcome::partial;
  return Outcome::failure;
}

struct EpisodeResult {
  Outcome outcome = Outcome::failure;
  int attempts = 0;  // scoop attempts
  double total_time_s = 0.0;
  double spillage_ml = 0.0;
  int breakage = 0;
  bool cleared = false;
};

// Per-step record for tests and tracing.
struct StepRecord {
  Observation obs;
  Action action;
  ScoopOutcome outcome;
  BowlState before;
  BowlState after;
};

using StepObserver = std::function<void(const StepRecord&)>;

// Pushes and rotations do not count toward the scoop-attempt budget, so a
// separate hard cap bounds total episode length.
inline int step_cap(int max_attempts) { return 4 * max_attempts; }

// Runs one episode: observe, pick an action, apply it, let the medium drift,
// until the bowl is cleared, the policy reports done, or the attempt budget
// runs out. Fully deterministic for a given config and trial index.
inline EpisodeResult run_episode(const TrialConfig& cfg, int trial_index,
                                 const TrajectoryLibrary& library,
                                 const StepObserver& observer = nullptr) {
  BowlState state = cfg.scenario.to_state();
  Rng rng(mix_seeds(cfg.seed ^ static_cast<std::uint64_t>(trial_index),
                    cfg.scenario.seed));
  LavaLowMemory memory;
  EpisodeResult result;
  int steps = 0;

  while (!is_cleared(state, cfg.clear_volume_ml) &&
         result.attempts < cfg.max_attempts && steps < step_cap(cfg.max_attempts)) {
    const Observation obs = observe(state, cfg.noise, rng, cfg.params);

    std::optional<Action> action;
    switch (cfg.policy) {
      case PolicyKind::lava:
        action = lava_step(obs, library, cfg.params);
        break;
      case PolicyKind::lava_low:
        action = lava_low_step(obs, memory, library, cfg.params);
        break;
      case PolicyKind::fts:
        action = fts_step(obs, cfg.params);
        break;
    }
    if (!action) break;  // policy reports an empty bowl
    ++steps;

    BowlState before = state;
    ScoopOutcome out;
    if (std::holds_alternative<ScoopAction>(*action)) {
      ++result.attempts;
      auto [next, o] = apply_scoop(state, std::get<ScoopAction>(*action).traj,
                                   cfg.params.spoon_capacity_ml, rng, cfg.params);
      state = std::move(next);
      out = std::move(o);
    } else if (std::holds_alternative<PushAction>(*action)) {
      const PushAction& push = std::get<PushAction>(*action);
      auto [next, o] = apply_push(state, push.target_id, push.displacement, rng,
                                  cfg.params);
      state = std::move(next);
      out = std::move(o);
    } else {
      const double angle = std::get<RotateAction>(*action).angle;
      state = rotate_bowl(state, angle);
      out.duration_s = std::abs(angle) / cfg.params.rotate_speed_radps;
    }
    result.total_time_s += out.duration_s;

    if (observer) observer(StepRecord{obs, *action, out, before, state});

    state = drift_step(state, rng, cfg.params);
  }

  result.cleared = is_cleared(state, cfg.clear_volume_ml);
  result.spillage_ml = state.spilled_total_ml;
  result.breakage = state.broken_total;
  result.outcome = classify_outcome(result.cleared, result.spillage_ml, result.breakage);
  return result;
}

// --- Reports -----------------------------------------------------------------

struct TrialRow {
  std::string config_id;
  std::string policy;
  std::string food;
  int trial = 0;
  Outcome outcome = Outcome::failure;
  int attempts = 0;
  double time_s = 0.0;
  double spillage_ml = 0.0;
  int breakage_n = 0;

  bool operator==(const TrialRow&) const = default;
};

struct Aggregate {
  std::string config_id;
  std::string policy;
  std::string food;
  int trials = 0;
  int n_success = 0;
  int n_partial = 0;
  int n_failure = 0;
  double success_rate = 0.0;
  double success_stderr = 0.0;
  double mean_time_s = 0.0;
  double mean_spillage_ml = 0.0;
  double mean_breakage = 0.0;
};

struct Report {
  bool partial_credit = true;  // partial successes score 0.5
  std::vector<TrialRow> rows;
  std::vector<Aggregate> aggregates;
};

inline double trial_score(Outcome o, bool partial_credit) {
  if (o == Outcome::success) return 1.0;
  if (o == Outcome::partial && partial_credit) return 0.5;
  return 0.0;
}

inline Aggregate aggregate_rows(const std::vector<TrialRow>& rows, bool partial_credit) {
  Aggregate agg;
  if (rows.empty()) return agg;
  agg.config_id = rows.front().config_id;
  agg.policy = rows.front().policy;
  agg.food = rows.front().food;
  agg.trials = static_cast<int>(rows.size());
  double score_sum = 0.0, score_sq = 0.0;
  for (const TrialRow& r : rows) {
    switch (r.outcome) {
      case Outcome::success: ++agg.n_success; break;
      case Outcome::partial: ++agg.n_partial; break;
      default: ++agg.n_failure; break;
    }
    const double s = trial_score(r.outcome, partial_credit);
    score_sum += s;
    score_sq += s * s;
    agg.mean_time_s += r.time_s;
    agg.mean_spillage_ml += r.spillage_ml;
    agg.mean_breakage += r.breakage_n;
  }
  const double n = static_cast<double>(agg.trials);
  agg.success_rate = score_sum / n;
  agg.mean_time_s /= n;
  agg.mean_spillage_ml /= n;
  agg.mean_breakage /= n;
  if (agg.trials > 1) {
    const double var = std::max(0.0, (score_sq - score_sum * score_sum / n) / (n - 1.0));
    agg.success_stderr = std::sqrt(var / n);
  }
  return agg;
}

inline std::string config_id_of(const TrialConfig& cfg) {
  return cfg.scenario.name + ":" + to_string(cfg.policy);
}

// Runs every cell of the matrix. Cells are independent (each trial owns its
// seeded stream), so the report content does not depend on matrix order.
inline Report run_experiment(const std::vector<TrialConfig>& matrix,
                             const TrajectoryLibrary& library,
                             bool partial_credit = true) {
  if (matrix.empty()) throw std::invalid_argument("run_experiment: empty matrix");
  Report report;
  report.partial_credit = partial_credit;
  for (const TrialConfig& cfg : matrix) {
    std::vector<TrialRow> rows;
    rows.reserve(cfg.trials);
    for (int trial = 0; trial < cfg.trials; ++trial) {
      EpisodeResult r;
      try {
        r = run_episode(cfg, trial, library);
      } catch (const std::exception& e) {
        throw std::runtime_error("config " + config_id_of(cfg) + " trial " +
                                 std::to_string(trial) + ": " + e.what());
      }
      rows.push_back(TrialRow{config_id_of(cfg), to_string(cfg.policy),
                              cfg.scenario.name, trial, r.outcome, r.attempts,
                              r.total_time_s, r.spillage_ml, r.breakage});
    }
    report.aggregates.push_back(aggregate_rows(rows, partial_credit));
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  }
  return report;
}

// --- CSV / JSON emission ---------------------------------------------------------

inline constexpr const char* kCsvHeader =
    "config_id,policy,food,trial,outcome,attempts,time_s,spillage_ml,breakage_n";

inline std::string report_csv(const Report& report) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (const TrialRow& r : report.rows) {
    out << r.config_id << "," << r.policy << "," << r.food << "," << r.trial << ","
        << to_string(r.outcome) << "," << r.attempts << "," << format_double(r.time_s)
        << "," << format_double(r.spillage_ml) << "," << r.breakage_n << "\n";
  }
  return out.str();
}

inline std::vector<TrialRow> parse_report_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("report CSV: bad or missing header");
  }
  std::vector<TrialRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 9) throw std::runtime_error("report CSV: malformed row: " + line);
    TrialRow r;
    r.config_id = fields[0];
    r.policy = fields[1];
    r.food = fields[2];
    r.trial = std::stoi(fields[3]);
    r.outcome = outcome_from_string(fields[4]);
    r.attempts = std::stoi(fields[5]);
    r.time_s = std::stod(fields[6]);
    r.spillage_ml = std::stod(fields[7]);
    r.breakage_n = std::stoi(fields[8]);
    rows.push_back(std::move(r));
  }
  return rows;
}

inline nlohmann::ordered_json report_json(const Report& report) {
  nlohmann::ordered_json j;
  j["partial_credit"] = report.partial_credit;
  j["rows"] = nlohmann::ordered_json::array();
  for (const TrialRow& r : report.rows) {
    j["rows"].push_back({{"config_id", r.config_id},
                         {"policy", r.policy},
                         {"food", r.food},
                         {"trial", r.trial},
                         {"outcome", to_string(r.outcome)},
                         {"attempts", r.attempts},
                         {"time_s", r.time_s},
                         {"spillage_ml", r.spillage_ml},
                         {"breakage_n", r.breakage_n}});
  }
  j["aggregates"] = nlohmann::ordered_json::array();
  for (const Aggregate& a : report.aggregates) {
    j["aggregates"].push_back({{"config_id", a.config_id},
                               {"policy", a.policy},
                               {"food", a.food},
                               {"trials", a.trials},
                               {"n_success", a.n_success},
                               {"n_partial", a.n_partial},
                               {"n_failure", a.n_failure},
                               {"success_rate", a.success_rate},
                               {"success_stderr", a.success_stderr},
                               {"mean_time_s", a.mean_time_s},
                               {"mean_spillage_ml", a.mean_spillage_ml},
                               {"mean_breakage", a.mean_breakage}});
  }
  return j;
}

inline Report report_from_json(const nlohmann::json& j) {
  Report report;
  report.partial_credit = j.at("partial_credit").get<bool>();
  for (const auto& r : j.at("rows")) {
    TrialRow row;
    row.config_id = r.at("config_id").get<std::string>();
    row.policy = r.at("policy").get<std::string>();
    row.food = r.at("food").get<std::string>();
    row.trial = r.at("trial").get<int>();
    row.outcome = outcome_from_string(r.at("outcome").get<std::string>());
    row.attempts = r.at("attempts").get<int>();
    row.time_s = r.at("time_s").get<double>();
    row.spillage_ml = r.at("spillage_ml").get<double>();
    row.breakage_n = r.at("breakage_n").get<int>();
    report.rows.push_back(std::move(row));
  }
  for (const auto& a : j.at("aggregates")) {
    Aggregate agg;
    agg.config_id = a.at("config_id").get<std::string>();
    agg.policy = a.at("policy").get<std::string>();
    agg.food = a.at("food").get<std::string>();
    agg.trials = a.at("trials").get<int>();
    agg.n_success = a.at("n_success").get<int>();
    agg.n_partial = a.at("n_partial").get<int>();
    agg.n_failure = a.at("n_failure").get<int>();
    agg.success_rate = a.at("success_rate").get<double>();
    agg.success_stderr = a.at("success_stderr").get<double>();
    agg.mean_time_s = a.at("mean_time_s").get<double>();
    agg.mean_spillage_ml = a.at("mean_spillage_ml").get<double>();
    agg.mean_breakage = a.at("mean_breakage").get<double>();
    report.aggregates.push_back(std::move(agg));
  }
  return report;
}

// Writes the report in the requested format. CSV carries the per-trial rows;
// JSON mirrors the rows and adds the aggregates.
inline void emit_report(const Report& report, const std::string& format,
                        const std::string& out_path) {
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write report: " + out_path);
  if (format == "csv") {
    out << report_csv(report);
  } else if (format == "json") {
    out << report_json(report).dump(2) << "\n";
  } else {
    throw std::invalid_argument("emit_report: format must be csv or json");
  }
}

}  // namespace lava

#endif  // LAVA_HARNESS_HPP_
