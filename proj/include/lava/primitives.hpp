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

#ifndef LAVA_PRIMITIVES_HPP_
#define LAVA_PRIMITIVES_HPP_

#include <cstdint>
#include <variant>

#include "lava/geometry.hpp"

namespace lava {

using ChunkId = std::uint32_t;

// High-level primitive: wall-assisted scooping for chunked/deformable food,
// direct scooping for cohesive bulk food.
enum class HighPrimitive { Wide, Deep };

// Softmax-style output of the food classifier over the two high-level
// primitives. Components sum to one.
struct HighDistribution {
  double wide = 0.0;
  double deep = 0.0;
};

// Mid-level primitives with their parameters.
struct WallGuidedScoop {
  double delta = 0.0;    // target centroid distance from the bowl center
  ChunkId target_id = 0;
  double bearing = 0.0;  // angle of the target as seen from the bowl center
};

struct AlignPush {
  double gamma = 0.0;  // spoon roll for the push, pitch is implicitly 0
  Vec2 push;           // displacement toward the bowl center
  ChunkId target_id = 0;
  Vec2 target_pos;
};

struct DirectScoop {
  double depth_class_cm = 0.0;  // one of {5.5, 4, 2}
};

using MidPrimitive = std::variant<WallGuidedScoop, AlignPush, DirectScoop>;

}  // namespace lava

#endif  // LAVA_PRIMITIVES_HPP_
