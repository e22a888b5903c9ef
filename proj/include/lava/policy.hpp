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

#ifndef LAVA_POLICY_HPP_
#define LAVA_POLICY_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lava/geometry.hpp"
#include "lava/params.hpp"
#include "lava/perception.hpp"
#include "lava/primitives.hpp"
#include "lava/trajectory.hpp"

namespace lava {

// --- Actions -----------------------------------------------------------------

struct ScoopAction {
  Trajectory traj;
};

struct PushAction {
  Trajectory traj;
  ChunkId target_id = 0;
  Vec2 displacement;
};

struct RotateAction {
  double angle = 0.0;
};

using Action = std::variant<ScoopAction, PushAction, RotateAction>;

// Aggregated behavior-cloning templates, one per primitive family.
struct TrajectoryLibrary {
  std::optional<Trajectory> wall_guided;
  std::optional<Trajectory> direct;
};

enum class PolicyKind { lava, lava_low, fts };

inline const char* to_string(PolicyKind p) {
  switch (p) {
    case PolicyKind::lava: return "lava";
    case PolicyKind::lava_low: return "lava-low";
    default: return "fts";
  }
}

inline PolicyKind policy_from_string(const std::string& s) {
  if (s == "lava") return PolicyKind::lava;
  if (s == "lava-low") return PolicyKind::lava_low;
  if (s == "fts") return PolicyKind::fts;
  throw std::invalid_argument("unknown policy: " + s + " (expected lava | lava-low | fts)");
}

// --- LAVA hierarchy ------------------------------------------------------------

inline HighPrimitive high_level(const Observation& obs) {
  const HighDistribution dist = classify_food(obs);
  return dist.wide >= dist.deep ? HighPrimitive::Wide : HighPrimitive::Deep;
}

// Wide-primitive refinement. Scoop the wall-adjacent rightmost target when
// one exists; otherwise take the instance closest to the center and either
// scoop it in place (already aligned) or push it toward the center first.
inline MidPrimitive mid_level_wide(const Observation& obs, const SimParams& params = {}) {
  if (obs.instances.empty()) {
    throw std::invalid_argument("mid_level_wide: no target instances");
  }
  const BowlModel& bowl = obs.bowl;

  const ObservedInstance* r1 = nullptr;
  for (const ObservedInstance& inst : obs.instances) {
    if (inst.subregion != Subregion::R1) continue;
    if (r1 == nullptr || inst.centroid.x > r1->centroid.x ||
        (inst.centroid.x == r1->centroid.x && inst.centroid.y > r1->centroid.y)) {
      r1 = &inst;
    }
  }
  if (r1 != nullptr) {
    return WallGuidedScoop{centroid_distance(r1->centroid, bowl), r1->id,
                           std::atan2(r1->centroid.y - bowl.center.y,
                                      r1->centroid.x - bowl.center.x)};
  }

  const ObservedInstance* target = nullptr;
  double best = 0.0;
  for (const ObservedInstance& inst : obs.instances) {
    const double d = centroid_distance(inst.centroid, bowl);
    if (target == nullptr || d < best || (d == best && inst.id < target->id)) {
      target = &inst;
      best = d;
    }
  }

  if (best <= params.aligned_radius_m()) {
    // Already centered: wall-guided scoop straight through it.
    const double bearing = (best == 0.0)
                               ? 0.0
                               : std::atan2(target->centroid.y - bowl.center.y,
                                            target->centroid.x - bowl.center.x);
    return WallGuidedScoop{best, target->id, bearing};
  }

  return AlignPush{alignment_angle(target->centroid, bowl.center),
                   push_vector(target->centroid, bowl, params.stop_margin_m),
                   target->id, target->centroid};
}

// Deep-primitive refinement: direct scooping at the estimated depth class.
inline MidPrimitive mid_level_deep(const Observation& obs) {
  return DirectScoop{estimate_depth(obs)};
}

// Straight-line push trajectory: tip slides from the target to its pushed
// position at constant roll, pitch 0.
inline Trajectory build_push_trajectory(const Vec2& from, const Vec2& push,
                                        double gamma, const BowlModel& bowl,
                                        const SimParams& params) {
  Trajectory traj;
  traj.family = PrimitiveFamily::wall_guided;
  const std::size_t n = static_cast<std::size_t>(params.trajectory_len);
  traj.waypoints.reserve(n);
  const double depth = std::max(0.0, bowl.inner_depth - 0.01);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(n - 1);
    SpoonPose w;
    w.tip = from + push * u;
    w.roll_gamma = gamma;
    w.pitch_beta = 0.0;
    w.insertion_z = depth;
    traj.waypoints.push_back(w);
  }
  traj.duration = push.norm() / params.push_speed_mps;
  return traj;
}

// Dispatches a mid-level primitive to an executable action using the
// aggregated templates.
inline Action low_level(const MidPrimitive& mid, const TrajectoryLibrary& library,
                        const BowlModel& bowl, const SimParams& params = {}) {
  if (std::holds_alternative<AlignPush>(mid)) {
    const AlignPush& align = std::get<AlignPush>(mid);
    return PushAction{build_push_trajectory(align.target_pos, align.push,
                                            align.gamma, bowl, params),
                      align.target_id, align.push};
  }
  if (std::holds_alternative<WallGuidedScoop>(mid)) {
    if (!library.wall_guided) {
      throw std::runtime_error("low_level: library has no wall-guided template");
    }
    return ScoopAction{adapt_trajectory(*library.wall_guided, mid, bowl, params)};
  }
  if (!library.direct) {
    throw std::runtime_error("low_level: library has no direct template");
  }
  return ScoopAction{adapt_trajectory(*library.direct, mid, bowl, params)};
}

// One step of the full hierarchy. Returns nothing when the scene shows no
// food left (done). A corrupted category that points at an empty branch
// falls back to the other branch rather than failing.
inline std::optional<Action> lava_step(const Observation& obs,
                                       const TrajectoryLibrary& library,
                                       const SimParams& params = {}) {
  const bool has_targets = !obs.instances.empty();
  const bool has_bulk = obs.depth_class_cm.has_value();
  if (!has_targets && !has_bulk) return std::nullopt;

  HighPrimitive hp = high_level(obs);
  if (hp == HighPrimitive::Wide && !has_targets) hp = HighPrimitive::Deep;
  if (hp == HighPrimitive::Deep && !has_bulk) hp = HighPrimitive::Wide;

  const MidPrimitive mid = (hp == HighPrimitive::Wide) ? mid_level_wide(obs, params)
                                                       : mid_level_deep(obs);
  return low_level(mid, library, obs.bowl, params);
}

// --- Baselines -----------------------------------------------------------------

// Fixed Trajectory Scooping: one predefined scoop at the bowl centroid with a
// fixed height and orientation, independent of the food state. The pitch
// profile starts with the -0.6 rad wrist rotation.
inline Action fts_step(const Observation& obs, const SimParams& params = {}) {
  Trajectory traj;
  traj.family = PrimitiveFamily::direct;
  traj.duration = params.fts_duration_s;
  const std::size_t n = static_cast<std::size_t>(params.trajectory_len);
  const double depth = ideal_insertion_m(obs.bowl, params.fts_depth_class_cm, params);
  traj.waypoints.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(n - 1);
    SpoonPose w;
    w.tip = obs.bowl.center;
    w.roll_gamma = 0.0;
    w.pitch_beta = params.fts_pitch_start + 0.9 * u;
    // The midpoint carries the exact predetermined depth.
    w.insertion_z = (i == n / 2) ? std::max(0.0, depth)
                                 : std::max(0.0, depth * std::sin(kPi * u));
    traj.waypoints.push_back(w);
  }
  return ScoopAction{traj};
}

// Episode memory for the low-level-only baseline.
struct LavaLowMemory {
  bool rotate_next = false;   // chunk mode alternates scoop / rotate
  bool deep_latched = false;  // bulk mode switches insertion depth once
};

// LAVA-low: shares the low-level templates but replaces the high/mid
// reasoning with fixed rules. Chunked scenes alternate a wall-guided scoop at
// a fixed station with 45-degree bowl rotations; bulk scenes scoop at a
// shallow setting until the observed depth crosses into the lowest class,
// then switch to the deep setting for the rest of the episode.
inline std::optional<Action> lava_low_step(const Observation& obs,
                                           LavaLowMemory& memory,
                                           const TrajectoryLibrary& library,
                                           const SimParams& params = {}) {
  const bool has_targets = !obs.instances.empty();
  const bool has_bulk = obs.depth_class_cm.has_value();
  if (!has_targets && !has_bulk) return std::nullopt;

  if (has_targets) {
    if (memory.rotate_next) {
      memory.rotate_next = false;
      return RotateAction{kPi / 4.0};
    }
    memory.rotate_next = true;
    if (!library.wall_guided) {
      throw std::runtime_error("lava_low_step: library has no wall-guided template");
    }
    const double station = params.lava_low_station_frac * obs.bowl.radius;
    return ScoopAction{adapt_wall_guided(*library.wall_guided, station, 0.0,
                                         obs.bowl, params)};
  }

  if (!memory.deep_latched && *obs.depth_class_cm == params.lava_low_deep_class_cm) {
    memory.deep_latched = true;
  }
  const double setting = memory.deep_latched ? params.lava_low_deep_class_cm
                                             : params.lava_low_shallow_class_cm;
  if (!library.direct) {
    throw std::runtime_error("lava_low_step: library has no direct template");
  }
  return ScoopAction{adapt_trajectory(*library.direct, DirectScoop{setting},
                                      obs.bowl, params)};
}

}  // namespace lava

#endif  // LAVA_POLICY_HPP_
