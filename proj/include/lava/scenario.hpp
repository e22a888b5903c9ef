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

#ifndef LAVA_SCENARIO_HPP_
#define LAVA_SCENARIO_HPP_

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lava/bowl_sim.hpp"

namespace lava {

// Bulk entry as authored: exactly one of volume_ml / depth_cm is given, the
// other is derived through the bowl cross-section.
struct ScenarioBulk {
  FoodKind kind = FoodKind::granular;
  std::optional<double> volume_ml;
  std::optional<double> depth_cm;
  std::optional<double> fluidity;  // override of the per-kind default

  bool operator==(const ScenarioBulk&) const = default;
};

struct ScenarioChunk {
  ChunkId id = 0;
  Vec2 pos;
  double radius = 0.0;
  ChunkMaterial material = ChunkMaterial::tofu;

  bool operator==(const ScenarioChunk&) const = default;
};

// On-disk scene description. Loading then saving preserves every field.
struct Scenario {
  std::string name;
  BowlModel bowl;
  std::optional<ScenarioBulk> bulk;
  std::vector<ScenarioChunk> chunks;
  std::uint64_t seed = 0;

  bool operator==(const Scenario&) const = default;

  BowlState to_state() const {
    BowlState state;
    state.bowl = bowl;
    if (bulk) {
      BulkFood food;
      food.kind = bulk->kind;
      if (bulk->volume_ml) {
        food.volume_ml = *bulk->volume_ml;
        food.depth_h_cm = depth_from_volume_cm(bowl, food.volume_ml);
      } else {
        food.depth_h_cm = *bulk->depth_cm;
        food.volume_ml = volume_from_depth_ml(bowl, food.depth_h_cm);
      }
      food.fluidity = bulk->fluidity ? *bulk->fluidity : default_fluidity(bulk->kind);
      state.bulk = food;
    }
    for (const ScenarioChunk& c : chunks) {
      state.chunks.push_back(Chunk{c.id, c.pos, c.radius, c.material, true});
    }
    return state;
  }
};

inline void validate(const Scenario& sc) {
  if (sc.bowl.radius <= 0.0 || sc.bowl.inner_depth <= 0.0) {
    throw std::invalid_argument("scenario: bowl radius and inner depth must be positive");
  }
  if (sc.bowl.center.x != 0.0 || sc.bowl.center.y != 0.0) {
    throw std::invalid_argument("scenario: bowl center must be [0, 0] (trajectories are bowl-framed)");
  }
  if (sc.bulk) {
    if (sc.bulk->volume_ml.has_value() == sc.bulk->depth_cm.has_value()) {
      throw std::invalid_argument("scenario: bulk needs exactly one of volume_ml / depth_cm");
    }
    const double v = sc.bulk->volume_ml ? *sc.bulk->volume_ml : *sc.bulk->depth_cm;
    if (v < 0.0) throw std::invalid_argument("scenario: bulk amount must be nonnegative");
    if (sc.bulk->fluidity && (*sc.bulk->fluidity < 0.0 || *sc.bulk->fluidity > 1.0)) {
      throw std::invalid_argument("scenario: fluidity must be in [0, 1]");
    }
  }
  std::vector<ChunkId> seen;
  for (const ScenarioChunk& c : sc.chunks) {
    if (c.radius <= 0.0) throw std::invalid_argument("scenario: chunk radius must be positive");
    if ((c.pos - sc.bowl.center).norm() > sc.bowl.radius - c.radius) {
      throw std::invalid_argument("scenario: chunk " + std::to_string(c.id) + " outside bowl interior");
    }
    for (ChunkId id : seen) {
      if (id == c.id) throw std::invalid_argument("scenario: duplicate chunk id");
    }
    seen.push_back(c.id);
  }
}

inline nlohmann::ordered_json to_json(const Scenario& sc) {
  nlohmann::ordered_json j;
  j["name"] = sc.name;
  j["bowl"] = {{"center", {sc.bowl.center.x, sc.bowl.center.y}},
               {"radius_m", sc.bowl.radius},
               {"inner_depth_m", sc.bowl.inner_depth},
               {"rotation_rad", sc.bowl.rotation}};
  if (sc.bulk) {
    nlohmann::ordered_json b;
    b["kind"] = to_string(sc.bulk->kind);
    if (sc.bulk->volume_ml) b["volume_ml"] = *sc.bulk->volume_ml;
    if (sc.bulk->depth_cm) b["depth_cm"] = *sc.bulk->depth_cm;
    if (sc.bulk->fluidity) b["fluidity"] = *sc.bulk->fluidity;
    j["bulk"] = b;
  }
  j["chunks"] = nlohmann::ordered_json::array();
  for (const ScenarioChunk& c : sc.chunks) {
    j["chunks"].push_back({{"id", c.id},
                           {"pos_m", {c.pos.x, c.pos.y}},
                           {"radius_m", c.radius},
                           {"material", to_string(c.material)}});
  }
  j["seed"] = sc.seed;
  return j;
}

inline Scenario scenario_from_json(const nlohmann::json& j) {
  Scenario sc;
  sc.name = j.at("name").get<std::string>();
  const auto& b = j.at("bowl");
  sc.bowl.center = {b.at("center")[0].get<double>(), b.at("center")[1].get<double>()};
  sc.bowl.radius = b.at("radius_m").get<double>();
  sc.bowl.inner_depth = b.at("inner_depth_m").get<double>();
  sc.bowl.rotation = b.value("rotation_rad", 0.0);
  if (j.contains("bulk")) {
    ScenarioBulk bulk;
    bulk.kind = food_kind_from_string(j["bulk"].at("kind").get<std::string>());
    if (j["bulk"].contains("volume_ml")) bulk.volume_ml = j["bulk"]["volume_ml"].get<double>();
    if (j["bulk"].contains("depth_cm")) bulk.depth_cm = j["bulk"]["depth_cm"].get<double>();
    if (j["bulk"].contains("fluidity")) bulk.fluidity = j["bulk"]["fluidity"].get<double>();
    sc.bulk = bulk;
  }
  if (j.contains("chunks")) {
    for (const auto& c : j["chunks"]) {
      ScenarioChunk chunk;
      chunk.id = c.at("id").get<ChunkId>();
      chunk.pos = {c.at("pos_m")[0].get<double>(), c.at("pos_m")[1].get<double>()};
      chunk.radius = c.at("radius_m").get<double>();
      chunk.material = material_from_string(c.at("material").get<std::string>());
      sc.chunks.push_back(chunk);
    }
  }
  sc.seed = j.value("seed", std::uint64_t{0});
  validate(sc);
  return sc;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  nlohmann::json j;
  try {
    in >> j;
    return scenario_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("scenario file " + path + ": " + e.what());
  }
}

inline void save_scenario(const Scenario& sc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scenario file: " + path);
  out << to_json(sc).dump(2) << "\n";
}

}  // namespace lava

#endif  // LAVA_SCENARIO_HPP_
