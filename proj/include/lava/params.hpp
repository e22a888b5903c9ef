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

#ifndef LAVA_PARAMS_HPP_
#define LAVA_PARAMS_HPP_

#include "lava/geometry.hpp"

namespace lava {

// The three depth classes the depth estimator reports, in centimeters.
inline constexpr double kDepthClasses[3] = {2.0, 4.0, 5.5};

// Simulator and policy parameters. Defaults are the shipped configuration;
// everything here can be overridden from an experiment config file.
struct SimParams {
  // Spoon.
  double spoon_capacity_ml = 10.0;
  double spoon_length_m = 0.10;
  double footprint_radius_m = 0.008;  // half-width of the spoon bowl
  double bite_depth_cm = 1.5;         // how far below the food surface a full bite reaches

  // Scoop dynamics.
  double depth_tolerance_cm = 1.4;  // insertion error that stays spill-free
  double depth_error_max_cm = 2.0;  // error at which the whole attempt spills
  double pickup_radius_m = 0.016;   // grab range around the trajectory's deepest point
  double contact_band_m = 0.010;    // z band below the deepest point treated as food contact

  // Push / drift / rotate dynamics.
  double drift_max_m = 0.02;
  double breakage_p = 0.8;
  double push_speed_mps = 0.05;
  double rotate_speed_radps = kPi / 4.0;  // one second per 45 degrees

  // Subregion bands (fractions of the bowl radius).
  double wall_band = 0.75;
  double center_band = 0.30;

  // Mid-level policy.
  double stop_margin_m = 0.010;  // one nominal chunk radius
  double align_slack_m = 0.010;  // target counts as aligned within stop_margin + slack

  // Trajectory library.
  int trajectory_len = 50;
  double wall_margin_m = 0.008;  // wall-press offset from the rim

  // Baselines.
  double fts_pitch_start = -0.6;
  double fts_depth_class_cm = 4.0;
  double fts_duration_s = 3.0;
  double lava_low_station_frac = 0.80;   // station radius as a fraction of bowl radius
  double lava_low_shallow_class_cm = 4.0;
  double lava_low_deep_class_cm = 2.0;

  double aligned_radius_m() const { return stop_margin_m + align_slack_m; }
};

// Insertion depth (meters below the rim) that takes a full bite from a food
// layer of depth h_cm.
inline double ideal_insertion_m(const BowlModel& bowl, double h_cm,
                                const SimParams& params) {
  return bowl.inner_depth - h_cm / 100.0 + params.bite_depth_cm / 100.0;
}

}  // namespace lava

#endif  // LAVA_PARAMS_HPP_
