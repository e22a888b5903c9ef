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

#ifndef LAVA_BOWL_SIM_HPP_
#define LAVA_BOWL_SIM_HPP_

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lava/geometry.hpp"
#include "lava/params.hpp"
#include "lava/primitives.hpp"
#include "lava/rng.hpp"
#include "lava/trajectory.hpp"

namespace lava {

enum class FoodKind { granular, liquid, semisolid };
enum class ChunkMaterial { tofu, fruit };

inline const char* to_string(FoodKind k) {
  switch (k) {
    case FoodKind::granular: return "granular";
    case FoodKind::liquid: return "liquid";
    default: return "semisolid";
  }
}

inline const char* to_string(ChunkMaterial m) {
  return m == ChunkMaterial::tofu ? "tofu" : "fruit";
}

inline FoodKind food_kind_from_string(const std::string& s) {
  if (s == "granular") return FoodKind::granular;
  if (s == "liquid") return FoodKind::liquid;
  if (s == "semisolid") return FoodKind::semisolid;
  throw std::invalid_argument("unknown food kind: " + s);
}

inline ChunkMaterial material_from_string(const std::string& s) {
  if (s == "tofu") return ChunkMaterial::tofu;
  if (s == "fruit") return ChunkMaterial::fruit;
  throw std::invalid_argument("unknown chunk material: " + s);
}

inline double default_fluidity(FoodKind k) {
  switch (k) {
    case FoodKind::liquid: return 1.0;
    case FoodKind::semisolid: return 0.5;
    default: return 0.0;  // granular
  }
}

// Uniform bulk layer. Volume is authoritative; depth is kept consistent with
// it through the bowl cross-section (volume = 0 <=> depth = 0).
struct BulkFood {
  FoodKind kind = FoodKind::granular;
  double depth_h_cm = 0.0;
  double volume_ml = 0.0;
  double fluidity = 0.0;  // [0, 1]
};

struct Chunk {
  ChunkId id = 0;
  Vec2 pos;
  double radius = 0.0;  // meters
  ChunkMaterial material = ChunkMaterial::tofu;
  bool intact = true;
};

// Ground-truth world state. A value type; every operation is
// state-in/state-out.
struct BowlState {
  BowlModel bowl;
  std::optional<BulkFood> bulk;
  std::vector<Chunk> chunks;
  double spilled_total_ml = 0.0;
  int broken_total = 0;

  double bulk_volume_ml() const { return bulk ? bulk->volume_ml : 0.0; }
  int intact_chunks() const {
    int n = 0;
    for (const Chunk& c : chunks) n += c.intact ? 1 : 0;
    return n;
  }
};

struct ScoopOutcome {
  double scooped_volume_ml = 0.0;
  std::vector<ChunkId> scooped_chunks;
  double spilled_ml = 0.0;
  std::vector<ChunkId> broken;
  double duration_s = 0.0;
};

// Bowl cross-section in cm^2, used to convert bulk volume to layer depth.
inline double bowl_area_cm2(const BowlModel& bowl) {
  const double r_cm = bowl.radius * 100.0;
  return kPi * r_cm * r_cm;
}

inline double depth_from_volume_cm(const BowlModel& bowl, double volume_ml) {
  return volume_ml / bowl_area_cm2(bowl);
}

inline double volume_from_depth_ml(const BowlModel& bowl, double depth_cm) {
  return depth_cm * bowl_area_cm2(bowl);
}

// Nominal chunk volume in milliliters from its planar radius.
inline double chunk_volume_ml(double radius_m) {
  const double r_cm = radius_m * 100.0;
  return 4.0 / 3.0 * kPi * r_cm * r_cm * r_cm;
}

inline Vec2 clamp_to_bowl(const Vec2& pos, const BowlModel& bowl, double chunk_radius) {
  const Vec2 rel = pos - bowl.center;
  const double limit = bowl.radius - chunk_radius;
  const double d = rel.norm();
  if (d <= limit || d == 0.0) return pos;
  return bowl.center + rel * (limit / d);
}

// Waypoints near the trajectory's deepest insertion, treated as the segment
// of the path in contact with the food.
inline std::vector<Vec2> contact_polyline(const Trajectory& traj,
                                          const SimParams& params) {
  const double zmax = traj.max_insertion();
  std::vector<Vec2> poly;
  for (const SpoonPose& w : traj.waypoints) {
    if (w.insertion_z >= zmax - params.contact_band_m) poly.push_back(w.tip);
  }
  return poly;
}

// Applies one scoop. Chunk mechanics: the intact chunk nearest the deepest
// waypoint (within pickup range) is scooped; any other intact chunk touched
// by the contact segment of the path is broken. Bulk mechanics (direct-family
// trajectories only): the attempted volume follows the spoon's penetration
// past the food surface, and insertion error beyond tolerance converts part
// of it to spillage, scaled by fluidity. The rng parameter is part of the
// action interface; the shipped dynamics are deterministic.
inline std::pair<BowlState, ScoopOutcome> apply_scoop(const BowlState& state,
                                                      const Trajectory& traj,
                                                      double spoon_capacity_ml,
                                                      [[maybe_unused]] Rng& rng,
                                                      const SimParams& params = {}) {
  if (traj.waypoints.empty()) throw std::invalid_argument("apply_scoop: empty trajectory");
  if (spoon_capacity_ml <= 0.0) throw std::invalid_argument("apply_scoop: capacity must be positive");

  BowlState next = state;
  ScoopOutcome out;
  out.duration_s = traj.duration;

  const Vec2 grab = traj.waypoints[traj.lowest_index()].tip;

  // Target pickup: nearest intact chunk within pickup range of the dig point.
  int target = -1;
  double best = params.pickup_radius_m;
  for (std::size_t i = 0; i < next.chunks.size(); ++i) {
    const Chunk& c = next.chunks[i];
    if (!c.intact) continue;
    const double d = (c.pos - grab).norm();
    if (d <= best) {
      best = d;
      target = static_cast<int>(i);
    }
  }
  if (target >= 0) {
    out.scooped_chunks.push_back(next.chunks[target].id);
    out.scooped_volume_ml += chunk_volume_ml(next.chunks[target].radius);
    next.chunks.erase(next.chunks.begin() + target);
  }

  // Collateral breakage along the contact segment.
  const std::vector<Vec2> contact = contact_polyline(traj, params);
  for (Chunk& c : next.chunks) {
    if (!c.intact) continue;
    if (point_polyline_distance(c.pos, contact) <= params.footprint_radius_m + c.radius) {
      c.intact = false;
      out.broken.push_back(c.id);
      ++next.broken_total;
    }
  }

  // Bulk removal, only for direct-style scoops.
  if (traj.family == PrimitiveFamily::direct && next.bulk && next.bulk->volume_ml > 0.0) {
    BulkFood& bulk = *next.bulk;
    const double inner_cm = next.bowl.inner_depth * 100.0;
    const double z_cm = traj.max_insertion() * 100.0;
    const double surface_cm = inner_cm - bulk.depth_h_cm;
    const double penetration = z_cm - surface_cm;
    if (penetration > 0.0) {
      const double reach = std::min(1.0, penetration / params.bite_depth_cm);
      const double attempted = std::min(spoon_capacity_ml * reach, bulk.volume_ml);
      const double ideal_cm = inner_cm - bulk.depth_h_cm + params.bite_depth_cm;
      const double err = std::abs(ideal_cm - z_cm);
      double spilled = 0.0;
      if (err > params.depth_tolerance_cm) {
        spilled = std::min(1.0, err / params.depth_error_max_cm) * bulk.fluidity * attempted;
      }
      bulk.volume_ml -= attempted;
      bulk.depth_h_cm = depth_from_volume_cm(next.bowl, bulk.volume_ml);
      out.scooped_volume_ml += attempted - spilled;
      out.spilled_ml = spilled;
      next.spilled_total_ml += spilled;
    }
  }

  return {std::move(next), std::move(out)};
}

// Applies a planar push to one chunk. The chunk slides along the segment to
// its (bowl-clamped) destination; any other intact chunk on the path is
// shoved sideways by the overlap and breaks with probability
// breakage_p * (1 - fluidity), the bulk cushioning the contact.
inline std::pair<BowlState, ScoopOutcome> apply_push(const BowlState& state,
                                                     ChunkId chunk_id,
                                                     const Vec2& displacement,
                                                     Rng& rng,
                                                     const SimParams& params = {}) {
  BowlState next = state;
  ScoopOutcome out;

  Chunk* pushed = nullptr;
  for (Chunk& c : next.chunks) {
    if (c.id == chunk_id) { pushed = &c; break; }
  }
  if (pushed == nullptr || !pushed->intact) {
    throw std::invalid_argument("apply_push: no intact chunk with id " + std::to_string(chunk_id));
  }

  const Vec2 start = pushed->pos;
  const Vec2 end = clamp_to_bowl(start + displacement, next.bowl, pushed->radius);
  const Vec2 motion = end - start;
  const double path_len = motion.norm();

  const double fluidity = (next.bulk && next.bulk->volume_ml > 0.0) ? next.bulk->fluidity : 0.0;
  for (Chunk& c : next.chunks) {
    if (!c.intact || c.id == chunk_id) continue;
    const double d = point_segment_distance(c.pos, start, end);
    const double r_sum = c.radius + pushed->radius;
    if (d >= r_sum || path_len == 0.0) continue;

    // Shove the bystander sideways out of the path by the overlap.
    Vec2 away;
    if (d > 0.0) {
      // Direction from the closest path point toward the chunk.
      const Vec2 ab = end - start;
      const double t = std::clamp((c.pos - start).dot(ab) / ab.dot(ab), 0.0, 1.0);
      away = (c.pos - (start + ab * t)) * (1.0 / d);
    } else {
      away = Vec2{-motion.y, motion.x} * (1.0 / path_len);
    }
    c.pos = clamp_to_bowl(c.pos + away * (r_sum - d), next.bowl, c.radius);
    if (rng.bernoulli(params.breakage_p * (1.0 - fluidity))) {
      c.intact = false;
      out.broken.push_back(c.id);
      ++next.broken_total;
    }
  }

  pushed->pos = end;
  out.duration_s = path_len / params.push_speed_mps;
  return {std::move(next), std::move(out)};
}

// Random per-chunk displacement of magnitude at most drift_max * fluidity,
// modeling items floating off on a fluid medium. No bulk or zero fluidity
// leaves the state untouched (and consumes no randomness).
inline BowlState drift_step(const BowlState& state, Rng& rng,
                            const SimParams& params = {}) {
  if (!state.bulk || state.bulk->volume_ml <= 0.0 || state.bulk->fluidity <= 0.0) {
    return state;
  }
  BowlState next = state;
  const double limit = params.drift_max_m * next.bulk->fluidity;
  for (Chunk& c : next.chunks) {
    if (!c.intact) continue;
    const double angle = rng.uniform(0.0, 2.0 * kPi);
    const double mag = rng.uniform(0.0, limit);
    c.pos = clamp_to_bowl(c.pos + polar(mag, angle), next.bowl, c.radius);
  }
  return next;
}

// Rotates the bowl (and everything sitting in it) about its center.
inline BowlState rotate_bowl(const BowlState& state, double angle) {
  BowlState next = state;
  next.bowl.rotation += angle;
  for (Chunk& c : next.chunks) {
    c.pos = next.bowl.center + (c.pos - next.bowl.center).rotated(angle);
  }
  return next;
}

// Clearance: no intact unscooped chunks and bulk volume at or below the
// allowance.
inline bool is_cleared(const BowlState& state, double clear_volume_ml) {
  if (clear_volume_ml < 0.0) throw std::invalid_argument("is_cleared: negative clear volume");
  return state.intact_chunks() == 0 && state.bulk_volume_ml() <= clear_volume_ml;
}

}  // namespace lava

#endif  // LAVA_BOWL_SIM_HPP_
