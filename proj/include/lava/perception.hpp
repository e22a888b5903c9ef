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

#ifndef LAVA_PERCEPTION_HPP_
#define LAVA_PERCEPTION_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lava/bowl_sim.hpp"
#include "lava/geometry.hpp"
#include "lava/params.hpp"
#include "lava/primitives.hpp"
#include "lava/rng.hpp"

namespace lava {

enum class FoodCategory {
  chunked,
  bulk_granular,
  bulk_liquid,
  bulk_semisolid,
  soup_with_chunks,
};

inline const char* to_string(FoodCategory c) {
  switch (c) {
    case FoodCategory::chunked: return "chunked";
    case FoodCategory::bulk_granular: return "bulk-granular";
    case FoodCategory::bulk_liquid: return "bulk-liquid";
    case FoodCategory::bulk_semisolid: return "bulk-semisolid";
    default: return "soup-with-chunks";
  }
}

struct ObservedInstance {
  ChunkId id = 0;
  Vec2 centroid;
  Subregion subregion = Subregion::R3;
};

// Structured stand-in for a camera frame: detected instances with subregion
// labels, a depth-class estimate when a bulk layer is present, and the bowl.
struct Observation {
  FoodCategory category = FoodCategory::chunked;
  std::vector<ObservedInstance> instances;
  std::optional<double> depth_class_cm;
  BowlModel bowl;
};

// Per-channel oracle accuracies; defaults are the measured network rates.
struct NoiseModel {
  double scoopnet_acc = 1.00;
  double targetnet_acc = 0.879;
  double depthnet_acc = 0.857;
};

// Nearest depth class, with midpoints rounding to the larger class.
inline double nearest_depth_class(double depth_cm) {
  if (depth_cm >= 0.5 * (kDepthClasses[1] + kDepthClasses[2])) return kDepthClasses[2];
  if (depth_cm >= 0.5 * (kDepthClasses[0] + kDepthClasses[1])) return kDepthClasses[1];
  return kDepthClasses[0];
}

inline FoodCategory bulk_category(FoodKind kind) {
  switch (kind) {
    case FoodKind::granular: return FoodCategory::bulk_granular;
    case FoodKind::liquid: return FoodCategory::bulk_liquid;
    default: return FoodCategory::bulk_semisolid;
  }
}

inline FoodCategory ground_truth_category(const BowlState& state) {
  const bool has_chunks = state.intact_chunks() > 0;
  const bool has_bulk = state.bulk && state.bulk->volume_ml > 0.0;
  if (has_chunks && has_bulk) return FoodCategory::soup_with_chunks;
  if (has_chunks) return FoodCategory::chunked;
  if (state.bulk) return bulk_category(state.bulk->kind);  // possibly drained
  return FoodCategory::chunked;  // emptied chunk bowl
}

// Observes the ground truth and independently corrupts the three channels:
// the category flips to a uniformly random wrong label, one instance's
// subregion is reassigned, and the depth class shifts to an adjacent class.
// Deterministic for a given (state, noise, rng) stream.
inline Observation observe(const BowlState& state, const NoiseModel& noise,
                           Rng& rng, const SimParams& params = {}) {
  Observation obs;
  obs.bowl = state.bowl;
  obs.category = ground_truth_category(state);

  std::vector<Vec2> centroids;
  for (const Chunk& c : state.chunks) {
    if (c.intact) centroids.push_back(c.pos);
  }
  for (const Chunk& c : state.chunks) {
    if (!c.intact) continue;
    obs.instances.push_back(ObservedInstance{
        c.id, c.pos,
        classify_subregion(c.pos, centroids, state.bowl, params.wall_band,
                           params.center_band)});
  }
  if (state.bulk && state.bulk->volume_ml > 0.0) {
    obs.depth_class_cm = nearest_depth_class(state.bulk->depth_h_cm);
  }

  // Corruption draws happen in a fixed order so episode streams replay.
  const bool corrupt_category = !rng.bernoulli(noise.scoopnet_acc);
  const bool corrupt_target = !rng.bernoulli(noise.targetnet_acc);
  const bool corrupt_depth = !rng.bernoulli(noise.depthnet_acc);

  if (corrupt_category) {
    constexpr FoodCategory all[] = {FoodCategory::chunked, FoodCategory::bulk_granular,
                                    FoodCategory::bulk_liquid, FoodCategory::bulk_semisolid,
                                    FoodCategory::soup_with_chunks};
    std::vector<FoodCategory> wrong;
    for (FoodCategory c : all) {
      if (c != obs.category) wrong.push_back(c);
    }
    obs.category = wrong[rng.pick(wrong.size())];
  }

  if (corrupt_target && !obs.instances.empty()) {
    ObservedInstance& inst = obs.instances[rng.pick(obs.instances.size())];
    constexpr Subregion all[] = {Subregion::R1, Subregion::R2, Subregion::R3};
    std::vector<Subregion> wrong;
    for (Subregion s : all) {
      if (s != inst.subregion) wrong.push_back(s);
    }
    inst.subregion = wrong[rng.pick(wrong.size())];
  }

  if (corrupt_depth && obs.depth_class_cm) {
    const double h = *obs.depth_class_cm;
    if (h == kDepthClasses[0]) {
      obs.depth_class_cm = kDepthClasses[1];
    } else if (h == kDepthClasses[2]) {
      obs.depth_class_cm = kDepthClasses[1];
    } else {
      obs.depth_class_cm = rng.bernoulli(0.5) ? kDepthClasses[0] : kDepthClasses[2];
    }
  }

  return obs;
}

// High-level primitive distribution from the food category alone: chunked
// scenes call for the wide primitive, cohesive bulk for the deep one.
inline HighDistribution classify_food(const Observation& obs) {
  switch (obs.category) {
    case FoodCategory::chunked:
    case FoodCategory::soup_with_chunks:
      return {1.0, 0.0};
    default:
      return {0.0, 1.0};
  }
}

// Depth-class estimate carried by the observation.
inline double estimate_depth(const Observation& obs) {
  if (!obs.depth_class_cm) {
    throw std::invalid_argument("estimate_depth: no bulk layer in observation");
  }
  return *obs.depth_class_cm;
}

}  // namespace lava

#endif  // LAVA_PERCEPTION_HPP_
