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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lava/demos.hpp"
#include "lava/policy.hpp"

using namespace lava;

namespace {

const SimParams kParams;

Observation chunk_obs(const std::vector<Vec2>& positions, double bowl_radius = 0.07) {
  Observation obs;
  obs.bowl = BowlModel{{0, 0}, bowl_radius, 0.07, 0.0};
  obs.category = FoodCategory::chunked;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    obs.instances.push_back(ObservedInstance{
        static_cast<ChunkId>(i + 1), positions[i],
        classify_subregion(positions[i], positions, obs.bowl, kParams.wall_band,
                           kParams.center_band)});
  }
  return obs;
}

Observation bulk_obs(FoodCategory category, double depth_class) {
  Observation obs;
  obs.bowl = BowlModel{{0, 0}, 0.03, 0.07, 0.0};
  obs.category = category;
  obs.depth_class_cm = depth_class;
  return obs;
}

const TrajectoryLibrary& library() {
  static const TrajectoryLibrary lib = default_library(kParams);
  return lib;
}

}  // namespace

TEST_CASE("high_level") {
  CHECK(high_level(chunk_obs({{0.06, 0.0}})) == HighPrimitive::Wide);
  CHECK(high_level(bulk_obs(FoodCategory::bulk_semisolid, 4.0)) == HighPrimitive::Deep);

  // Soup keeps the wide primitive while chunk instances remain, then goes
  // deep once they are gone.
  Observation soup = bulk_obs(FoodCategory::soup_with_chunks, 4.0);
  soup.instances.push_back(ObservedInstance{1, {0.01, 0.0}, Subregion::R2});
  CHECK(high_level(soup) == HighPrimitive::Wide);
  Observation drained = bulk_obs(FoodCategory::bulk_liquid, 4.0);
  CHECK(high_level(drained) == HighPrimitive::Deep);
}

TEST_CASE("mid_level_wide") {
  SECTION("wall-adjacent chunk gets a wall-guided scoop at its delta") {
    const Vec2 pos{0.9 * 0.07, 0.0};
    const MidPrimitive mid = mid_level_wide(chunk_obs({pos}), kParams);
    REQUIRE(std::holds_alternative<WallGuidedScoop>(mid));
    const auto& wg = std::get<WallGuidedScoop>(mid);
    CHECK(wg.delta == Catch::Approx(pos.norm()));
    CHECK(wg.target_id == 1);
    CHECK(wg.bearing == Catch::Approx(0.0).margin(1e-12));
  }

  SECTION("center chunk gets an align push toward the center") {
    const Vec2 pos{0.0, 0.035};  // mid-ring, beyond the aligned radius
    const MidPrimitive mid = mid_level_wide(chunk_obs({pos}), kParams);
    REQUIRE(std::holds_alternative<AlignPush>(mid));
    const auto& align = std::get<AlignPush>(mid);
    CHECK(align.gamma == Catch::Approx(alignment_angle(pos, {0, 0})));
    CHECK((pos + align.push).norm() == Catch::Approx(kParams.stop_margin_m).margin(1e-12));
    CHECK(align.target_id == 1);
  }

  SECTION("an already-aligned chunk is scooped, not pushed again") {
    const Vec2 pos{0.012, 0.0};  // within stop_margin + slack
    const MidPrimitive mid = mid_level_wide(chunk_obs({pos}), kParams);
    REQUIRE(std::holds_alternative<WallGuidedScoop>(mid));
    CHECK(std::get<WallGuidedScoop>(mid).delta == Catch::Approx(0.012));
  }

  SECTION("R1 takes priority over R2") {
    const std::vector<Vec2> both{{0.06, 0.0}, {0.005, 0.0}};
    const MidPrimitive mid = mid_level_wide(chunk_obs(both), kParams);
    REQUIRE(std::holds_alternative<WallGuidedScoop>(mid));
    CHECK(std::get<WallGuidedScoop>(mid).target_id == 1);
  }

  SECTION("never aligns while any R1 label is present") {
    Rng rng(21);
    for (int layout = 0; layout < 500; ++layout) {
      std::vector<Vec2> positions;
      const std::size_t n = 1 + rng.pick(5);
      for (std::size_t i = 0; i < n; ++i) {
        positions.push_back(polar(rng.uniform(0.0, 0.060), rng.uniform(0.0, 2 * kPi)));
      }
      const Observation obs = chunk_obs(positions);
      bool has_r1 = false;
      for (const auto& inst : obs.instances) has_r1 |= inst.subregion == Subregion::R1;
      const MidPrimitive mid = mid_level_wide(obs, kParams);
      if (has_r1) {
        REQUIRE(std::holds_alternative<WallGuidedScoop>(mid));
      }
    }
  }

  SECTION("no instances is an error") {
    Observation obs;
    obs.bowl = BowlModel{{0, 0}, 0.07, 0.07, 0.0};
    obs.category = FoodCategory::chunked;
    CHECK_THROWS_AS(mid_level_wide(obs, kParams), std::invalid_argument);
  }
}

TEST_CASE("mid_level_deep") {
  for (double cls : {2.0, 4.0, 5.5}) {
    const MidPrimitive mid = mid_level_deep(bulk_obs(FoodCategory::bulk_liquid, cls));
    REQUIRE(std::holds_alternative<DirectScoop>(mid));
    CHECK(std::get<DirectScoop>(mid).depth_class_cm == cls);
  }
  Observation no_bulk;
  no_bulk.bowl = BowlModel{{0, 0}, 0.03, 0.07, 0.0};
  no_bulk.category = FoodCategory::bulk_liquid;
  CHECK_THROWS_AS(mid_level_deep(no_bulk), std::invalid_argument);
}

TEST_CASE("low_level") {
  const BowlModel bowl{{0, 0}, 0.05, 0.07, 0.0};

  SECTION("direct scoops differ by the class gap exactly") {
    const Action a = low_level(DirectScoop{5.5}, library(), bowl, kParams);
    const Action b = low_level(DirectScoop{2.0}, library(), bowl, kParams);
    const double za = std::get<ScoopAction>(a).traj.max_insertion();
    const double zb = std::get<ScoopAction>(b).traj.max_insertion();
    CHECK(zb - za == Catch::Approx(0.035).margin(1e-12));
  }

  SECTION("align push builds a straight constant-roll trajectory") {
    const Vec2 target{0.02, 0.0};
    const Vec2 push{-0.012, 0.0};
    const Action a = low_level(AlignPush{kPi, push, 1, target}, library(), bowl, kParams);
    REQUIRE(std::holds_alternative<PushAction>(a));
    const Trajectory& traj = std::get<PushAction>(a).traj;
    CHECK((traj.waypoints.front().tip - target).norm() < 1e-12);
    CHECK((traj.waypoints.back().tip - (target + push)).norm() < 1e-12);
    for (const SpoonPose& w : traj.waypoints) {
      CHECK(w.roll_gamma == kPi);
      CHECK(w.pitch_beta == 0.0);
    }
    CHECK(traj.duration == Catch::Approx(push.norm() / kParams.push_speed_mps));
  }

  SECTION("missing template is reported") {
    TrajectoryLibrary empty;
    CHECK_THROWS_AS(low_level(DirectScoop{4.0}, empty, bowl, kParams), std::runtime_error);
    CHECK_THROWS_AS(low_level(WallGuidedScoop{0.02, 1, 0.0}, empty, bowl, kParams),
                    std::runtime_error);
  }
}

TEST_CASE("lava_step") {
  SECTION("cereal bowl goes deep with a direct scoop") {
    const auto action = lava_step(bulk_obs(FoodCategory::bulk_granular, 5.5),
                                  library(), kParams);
    REQUIRE(action.has_value());
    REQUIRE(std::holds_alternative<ScoopAction>(*action));
    CHECK(std::get<ScoopAction>(*action).traj.family == PrimitiveFamily::direct);
  }

  SECTION("centered tofu is pushed, then scooped on the next step") {
    const Vec2 start{0.0, 0.035};
    const auto push_action = lava_step(chunk_obs({start}), library(), kParams);
    REQUIRE(push_action.has_value());
    REQUIRE(std::holds_alternative<PushAction>(*push_action));

    const Vec2 after = start + std::get<PushAction>(*push_action).displacement;
    const auto scoop_action = lava_step(chunk_obs({after}), library(), kParams);
    REQUIRE(scoop_action.has_value());
    REQUIRE(std::holds_alternative<ScoopAction>(*scoop_action));
    CHECK(std::get<ScoopAction>(*scoop_action).traj.family ==
          PrimitiveFamily::wall_guided);
  }

  SECTION("empty bowl signals done") {
    Observation obs;
    obs.bowl = BowlModel{{0, 0}, 0.03, 0.07, 0.0};
    obs.category = FoodCategory::bulk_granular;
    CHECK_FALSE(lava_step(obs, library(), kParams).has_value());
  }

  SECTION("a corrupted category falls back to the populated branch") {
    Observation obs = bulk_obs(FoodCategory::chunked, 4.0);  // label lies: no instances
    const auto action = lava_step(obs, library(), kParams);
    REQUIRE(action.has_value());
    CHECK(std::holds_alternative<ScoopAction>(*action));
  }
}

TEST_CASE("fts_step") {
  const Observation a = bulk_obs(FoodCategory::bulk_liquid, 5.5);
  const Observation b = bulk_obs(FoodCategory::bulk_liquid, 2.0);

  const Trajectory ta = std::get<ScoopAction>(fts_step(a, kParams)).traj;
  const Trajectory tb = std::get<ScoopAction>(fts_step(b, kParams)).traj;

  SECTION("state independence: identical actions for the same bowl") {
    REQUIRE(ta.size() == tb.size());
    for (std::size_t i = 0; i < ta.size(); ++i) {
      CHECK(flatten(ta.waypoints[i]) == flatten(tb.waypoints[i]));
    }
    CHECK(ta.duration == tb.duration);
  }

  SECTION("pitch profile starts at -0.6 rad") {
    CHECK(ta.waypoints.front().pitch_beta == -0.6);
  }

  SECTION("insertion depth is the fixed mid-class setting") {
    CHECK(ta.max_insertion() ==
          Catch::Approx(ideal_insertion_m(a.bowl, kParams.fts_depth_class_cm, kParams)));
  }
}

TEST_CASE("lava_low_step") {
  SECTION("chunk scenes alternate scoop and 45-degree rotations") {
    Observation obs = chunk_obs({{0.02, 0.055}});
    LavaLowMemory memory;
    double rotation_sum = 0.0;
    int rotations = 0;
    bool expect_scoop = true;
    for (int step = 0; step < 16; ++step) {
      const auto action = lava_low_step(obs, memory, library(), kParams);
      REQUIRE(action.has_value());
      if (expect_scoop) {
        REQUIRE(std::holds_alternative<ScoopAction>(*action));
        CHECK(std::get<ScoopAction>(*action).traj.family == PrimitiveFamily::wall_guided);
      } else {
        REQUIRE(std::holds_alternative<RotateAction>(*action));
        rotation_sum += std::get<RotateAction>(*action).angle;
        ++rotations;
      }
      expect_scoop = !expect_scoop;
    }
    CHECK(rotations == 8);
    CHECK(rotation_sum == Catch::Approx(2 * kPi));  // 8 cycles sweep the full bowl
  }

  SECTION("bulk insertion depth changes exactly once per episode") {
    LavaLowMemory memory;
    std::vector<double> settings;
    // Observed classes walk down as the bowl empties, with a noisy blip back
    // up after the switch; the latch must hold.
    for (double cls : {5.5, 4.0, 4.0, 2.0, 4.0, 2.0, 2.0}) {
      const auto action = lava_low_step(bulk_obs(FoodCategory::bulk_liquid, cls),
                                        memory, library(), kParams);
      REQUIRE(action.has_value());
      settings.push_back(std::get<ScoopAction>(*action).traj.max_insertion());
    }
    int changes = 0;
    for (std::size_t i = 1; i < settings.size(); ++i) {
      if (settings[i] != settings[i - 1]) ++changes;
    }
    CHECK(changes == 1);
    CHECK(settings.front() ==
          Catch::Approx(ideal_insertion_m(bulk_obs(FoodCategory::bulk_liquid, 4.0).bowl,
                                          kParams.lava_low_shallow_class_cm, kParams)));
    CHECK(settings.back() ==
          Catch::Approx(ideal_insertion_m(bulk_obs(FoodCategory::bulk_liquid, 4.0).bowl,
                                          kParams.lava_low_deep_class_cm, kParams)));
  }

  SECTION("uses the same library templates as the full policy") {
    Observation obs = chunk_obs({{0.0, 0.056}});
    LavaLowMemory memory;
    const auto action = lava_low_step(obs, memory, library(), kParams);
    const Trajectory& station = std::get<ScoopAction>(*action).traj;
    // The station scoop is the shared wall-guided template warped to the
    // fixed station; pitch and insertion profiles are the template's own.
    const Trajectory direct_warp = adapt_wall_guided(
        *library().wall_guided, kParams.lava_low_station_frac * obs.bowl.radius, 0.0,
        obs.bowl, kParams);
    REQUIRE(station.size() == direct_warp.size());
    for (std::size_t i = 0; i < station.size(); ++i) {
      CHECK(station.waypoints[i].pitch_beta == direct_warp.waypoints[i].pitch_beta);
      CHECK(station.waypoints[i].insertion_z == direct_warp.waypoints[i].insertion_z);
    }
  }

  SECTION("empty bowl signals done") {
    Observation obs;
    obs.bowl = BowlModel{{0, 0}, 0.03, 0.07, 0.0};
    obs.category = FoodCategory::bulk_granular;
    LavaLowMemory memory;
    CHECK_FALSE(lava_low_step(obs, memory, library(), kParams).has_value());
  }
}
