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
#include <filesystem>

#include "lava/bowl_sim.hpp"
#include "lava/demos.hpp"
#include "lava/scenario.hpp"

using namespace lava;

namespace {

// Independent disc-vs-segment intersection: solves the quadratic for the ray
// through the segment against the inflated chunk disc.
bool segment_hits_disc(const Vec2& a, const Vec2& b, const Vec2& center,
                       double radius) {
  const Vec2 d = b - a;
  const Vec2 f = a - center;
  const double A = d.dot(d);
  if (A == 0.0) return f.norm() <= radius;
  const double B = 2.0 * f.dot(d);
  const double C = f.dot(f) - radius * radius;
  const double disc = B * B - 4 * A * C;
  if (disc < 0.0) return false;
  const double root = std::sqrt(disc);
  const double t1 = (-B - root) / (2 * A);
  const double t2 = (-B + root) / (2 * A);
  return (t1 >= 0.0 && t1 <= 1.0) || (t2 >= 0.0 && t2 <= 1.0) || (t1 < 0.0 && t2 > 1.0);
}

BowlState water_bowl(double volume_ml, double radius_m = 0.03) {
  BowlState s;
  s.bowl = BowlModel{{0, 0}, radius_m, 0.07, 0.0};
  BulkFood bulk;
  bulk.kind = FoodKind::liquid;
  bulk.volume_ml = volume_ml;
  bulk.depth_h_cm = depth_from_volume_cm(s.bowl, volume_ml);
  bulk.fluidity = 1.0;
  s.bulk = bulk;
  return s;
}

// Minimal direct-family scoop trajectory reaching exactly the given
// insertion depth at its midpoint.
Trajectory probe_scoop(double insertion_m, const Vec2& at = {0, 0}) {
  Trajectory t;
  t.family = PrimitiveFamily::direct;
  t.duration = 2.0;
  for (int i = 0; i < 21; ++i) {
    const double u = i / 20.0;
    SpoonPose w;
    w.tip = at;
    w.insertion_z = (i == 10) ? std::max(0.0, insertion_m)
                              : std::max(0.0, insertion_m * std::sin(kPi * u));
    t.waypoints.push_back(w);
  }
  return t;
}

}  // namespace

TEST_CASE("apply_scoop on bulk") {
  const SimParams params;
  Rng rng(1);

  SECTION("perfect insertion scoops a full spoon without spillage") {
    BowlState s = water_bowl(100.0);
    const double ideal = ideal_insertion_m(s.bowl, s.bulk->depth_h_cm, params);
    auto [next, out] = apply_scoop(s, probe_scoop(ideal), 10.0, rng, params);
    CHECK(out.scooped_volume_ml == Catch::Approx(10.0).margin(1e-12));
    CHECK(out.spilled_ml == 0.0);
    CHECK(next.bulk->volume_ml == Catch::Approx(90.0).margin(1e-12));
    CHECK(next.bulk->depth_h_cm ==
          Catch::Approx(depth_from_volume_cm(next.bowl, 90.0)).margin(1e-12));
    CHECK(out.duration_s == 2.0);
  }

  SECTION("empty bowl is a no-op") {
    BowlState s = water_bowl(0.0);
    auto [next, out] = apply_scoop(s, probe_scoop(0.05), 10.0, rng, params);
    CHECK(out.scooped_volume_ml == 0.0);
    CHECK(out.spilled_ml == 0.0);
    CHECK(next.bulk->volume_ml == 0.0);
    CHECK(next.spilled_total_ml == 0.0);
  }

  SECTION("insertion above the surface removes nothing") {
    BowlState s = water_bowl(80.0);
    const double surface = s.bowl.inner_depth - s.bulk->depth_h_cm / 100.0;
    auto [next, out] = apply_scoop(s, probe_scoop(surface - 0.005), 10.0, rng, params);
    CHECK(out.scooped_volume_ml == 0.0);
    CHECK(next.bulk->volume_ml == 80.0);
  }

  SECTION("deep error spills in proportion to fluidity") {
    BowlState s = water_bowl(120.0);
    const double ideal = ideal_insertion_m(s.bowl, s.bulk->depth_h_cm, params);
    const double err_cm = 1.8;  // beyond the 1.4 cm tolerance
    auto [next, out] =
        apply_scoop(s, probe_scoop(ideal + err_cm / 100.0), 10.0, rng, params);
    const double frac = std::min(1.0, err_cm / params.depth_error_max_cm);
    CHECK(out.spilled_ml == Catch::Approx(frac * 10.0).margin(1e-9));
    CHECK(out.scooped_volume_ml == Catch::Approx(10.0 - out.spilled_ml).margin(1e-12));
    CHECK(next.spilled_total_ml == out.spilled_ml);

    // Same error on granular food spills nothing (fluidity 0).
    BowlState g = water_bowl(120.0);
    g.bulk->kind = FoodKind::granular;
    g.bulk->fluidity = 0.0;
    auto [gn, gout] = apply_scoop(g, probe_scoop(ideal + err_cm / 100.0), 10.0, rng, params);
    CHECK(gout.spilled_ml == 0.0);
  }

  SECTION("wall-guided trajectories leave the bulk alone") {
    BowlState s = water_bowl(100.0);
    Trajectory t = probe_scoop(0.06);
    t.family = PrimitiveFamily::wall_guided;
    auto [next, out] = apply_scoop(s, t, 10.0, rng, params);
    CHECK(next.bulk->volume_ml == 100.0);
    CHECK(out.scooped_volume_ml == 0.0);
  }

  SECTION("empty trajectory is rejected") {
    BowlState s = water_bowl(50.0);
    CHECK_THROWS_AS(apply_scoop(s, Trajectory{}, 10.0, rng, params),
                    std::invalid_argument);
  }
}

TEST_CASE("apply_scoop on chunks") {
  const SimParams params;
  const TrajectoryLibrary lib = default_library(params);
  Rng rng(2);

  BowlState s;
  s.bowl = BowlModel{{0, 0}, 0.07, 0.07, 0.0};
  s.chunks.push_back(Chunk{1, {0.9 * 0.07, 0.0}, 0.009, ChunkMaterial::tofu, true});
  s.chunks.push_back(Chunk{2, {0.7 * 0.07, 0.0}, 0.009, ChunkMaterial::tofu, true});

  const double delta = centroid_distance(s.chunks[0].pos, s.bowl);
  const Trajectory traj = adapt_wall_guided(*lib.wall_guided, delta, 0.0, s.bowl, params);

  // Independent oracle: the contact segment of the sweep must provably
  // intersect the second chunk's inflated disc.
  const std::vector<Vec2> contact = contact_polyline(traj, params);
  REQUIRE(contact.size() >= 2);
  bool oracle_hit = false;
  for (std::size_t i = 0; i + 1 < contact.size(); ++i) {
    if (segment_hits_disc(contact[i], contact[i + 1], s.chunks[1].pos,
                          params.footprint_radius_m + s.chunks[1].radius)) {
      oracle_hit = true;
    }
  }
  REQUIRE(oracle_hit);

  auto [next, out] = apply_scoop(s, traj, 10.0, rng, params);
  CHECK(out.scooped_chunks == std::vector<ChunkId>{1});
  CHECK(out.broken == std::vector<ChunkId>{2});
  REQUIRE(next.chunks.size() == 1);
  CHECK(next.chunks[0].id == 2);
  CHECK_FALSE(next.chunks[0].intact);
  CHECK(next.broken_total == 1);
  CHECK(out.scooped_volume_ml == Catch::Approx(chunk_volume_ml(0.009)));

  SECTION("a far-away scoop misses everything") {
    const Trajectory miss =
        adapt_wall_guided(*lib.wall_guided, delta, kPi, s.bowl, params);
    auto [n2, o2] = apply_scoop(s, miss, 10.0, rng, params);
    CHECK(o2.scooped_chunks.empty());
    CHECK(o2.broken.empty());
    CHECK(n2.intact_chunks() == 2);
  }
}

TEST_CASE("apply_push") {
  const SimParams params;
  BowlState s;
  s.bowl = BowlModel{{0, 0}, 0.07, 0.07, 0.0};
  s.chunks.push_back(Chunk{1, {0.04, 0.0}, 0.009, ChunkMaterial::tofu, true});

  SECTION("push to the stop margin") {
    Rng rng(3);
    const Vec2 push = push_vector(s.chunks[0].pos, s.bowl, 0.01);
    auto [next, out] = apply_push(s, 1, push, rng, params);
    CHECK(centroid_distance(next.chunks[0].pos, next.bowl) ==
          Catch::Approx(0.01).margin(1e-12));
    CHECK(out.duration_s == Catch::Approx(push.norm() / params.push_speed_mps));
  }

  SECTION("zero push is the identity with zero duration") {
    Rng rng(4);
    auto [next, out] = apply_push(s, 1, {0, 0}, rng, params);
    CHECK(next.chunks[0].pos == s.chunks[0].pos);
    CHECK(out.duration_s == 0.0);
    CHECK(out.broken.empty());
  }

  SECTION("bystander on the path breaks with certainty when breakage_p = 1") {
    SimParams certain = params;
    certain.breakage_p = 1.0;
    BowlState two = s;
    two.chunks.push_back(Chunk{2, {0.02, 0.003}, 0.009, ChunkMaterial::tofu, true});
    const Vec2 push{-0.035, 0.0};  // drags chunk 1 straight through chunk 2's lane

    // Oracle: the path segment must enter the inflated disc of chunk 2.
    REQUIRE(segment_hits_disc(two.chunks[0].pos, two.chunks[0].pos + push,
                              two.chunks[1].pos, 0.018));

    Rng rng(5);
    auto [next, out] = apply_push(two, 1, push, rng, certain);
    CHECK(out.broken == std::vector<ChunkId>{2});
    CHECK(next.broken_total == 1);
    // Exactly one broken: the pushed chunk itself stays intact.
    int intact = 0;
    for (const Chunk& c : next.chunks) intact += c.intact ? 1 : 0;
    CHECK(intact == 1);
    CHECK(next.chunks[0].intact);
  }

  SECTION("full fluidity support suppresses push breakage") {
    SimParams certain = params;
    certain.breakage_p = 1.0;
    BowlState soup = s;
    soup.bulk = BulkFood{FoodKind::liquid, 2.0, volume_from_depth_ml(soup.bowl, 2.0), 1.0};
    soup.chunks.push_back(Chunk{2, {0.02, 0.003}, 0.009, ChunkMaterial::tofu, true});
    Rng rng(6);
    auto [next, out] = apply_push(soup, 1, {-0.035, 0.0}, rng, certain);
    CHECK(out.broken.empty());
    CHECK(next.intact_chunks() == 2);
  }

  SECTION("destination clamps to the bowl interior") {
    Rng rng(7);
    auto [next, out] = apply_push(s, 1, {0.2, 0.0}, rng, params);
    CHECK(centroid_distance(next.chunks[0].pos, next.bowl) <=
          next.bowl.radius - next.chunks[0].radius + 1e-12);
  }

  SECTION("unknown or broken targets are rejected") {
    Rng rng(8);
    CHECK_THROWS_AS(apply_push(s, 99, {0.01, 0}, rng, params), std::invalid_argument);
    BowlState broken = s;
    broken.chunks[0].intact = false;
    CHECK_THROWS_AS(apply_push(broken, 1, {0.01, 0}, rng, params), std::invalid_argument);
  }
}

TEST_CASE("drift_step") {
  const SimParams params;

  SECTION("granular medium leaves positions bitwise identical") {
    BowlState s = water_bowl(100.0, 0.05);
    s.bulk->kind = FoodKind::granular;
    s.bulk->fluidity = 0.0;
    s.chunks.push_back(Chunk{1, {0.01, 0.02}, 0.008, ChunkMaterial::tofu, true});
    Rng rng(9);
    const BowlState next = drift_step(s, rng, params);
    CHECK(next.chunks[0].pos.x == s.chunks[0].pos.x);
    CHECK(next.chunks[0].pos.y == s.chunks[0].pos.y);
  }

  SECTION("per-step displacement stays within the drift bound") {
    BowlState s = water_bowl(150.0, 0.05);
    s.chunks.push_back(Chunk{1, {0.01, 0.0}, 0.008, ChunkMaterial::tofu, true});
    s.chunks.push_back(Chunk{2, {-0.02, 0.01}, 0.008, ChunkMaterial::tofu, true});
    Rng rng(10);
    BowlState cur = s;
    for (int step = 0; step < 10000; ++step) {
      const BowlState next = drift_step(cur, rng, params);
      for (std::size_t i = 0; i < cur.chunks.size(); ++i) {
        const double moved = (next.chunks[i].pos - cur.chunks[i].pos).norm();
        REQUIRE(moved <= params.drift_max_m * s.bulk->fluidity + 1e-12);
        REQUIRE(centroid_distance(next.chunks[i].pos, next.bowl) <=
                next.bowl.radius - next.chunks[i].radius + 1e-12);
      }
      cur = next;
    }
  }

  SECTION("same seed, same state, same result") {
    BowlState s = water_bowl(150.0, 0.05);
    s.chunks.push_back(Chunk{1, {0.012, -0.004}, 0.008, ChunkMaterial::fruit, true});
    Rng a(123), b(123);
    const BowlState n1 = drift_step(s, a, params);
    const BowlState n2 = drift_step(s, b, params);
    CHECK(n1.chunks[0].pos.x == n2.chunks[0].pos.x);
    CHECK(n1.chunks[0].pos.y == n2.chunks[0].pos.y);
  }
}

TEST_CASE("rotate_bowl") {
  BowlState s;
  s.bowl = BowlModel{{0, 0}, 0.06, 0.07, 0.0};
  s.chunks.push_back(Chunk{1, {0.03, 0.0}, 0.008, ChunkMaterial::tofu, true});

  SECTION("quarter turn") {
    const BowlState next = rotate_bowl(s, kPi / 2);
    CHECK(next.chunks[0].pos.x == Catch::Approx(0.0).margin(1e-12));
    CHECK(next.chunks[0].pos.y == Catch::Approx(0.03).margin(1e-12));
    CHECK(next.bowl.rotation == Catch::Approx(kPi / 2));
  }

  SECTION("full turn restores positions") {
    const BowlState next = rotate_bowl(s, 2 * kPi);
    CHECK((next.chunks[0].pos - s.chunks[0].pos).norm() < 1e-9);
  }

  SECTION("eight 45-degree rotations compose to the identity") {
    BowlState cur = s;
    for (int i = 0; i < 8; ++i) cur = rotate_bowl(cur, kPi / 4);
    CHECK((cur.chunks[0].pos - s.chunks[0].pos).norm() < 1e-9);
    CHECK(cur.bowl.rotation == Catch::Approx(2 * kPi));
  }

  SECTION("bulk is unaffected") {
    BowlState wet = water_bowl(90.0, 0.06);
    const BowlState next = rotate_bowl(wet, 1.0);
    CHECK(next.bulk->volume_ml == wet.bulk->volume_ml);
    CHECK(next.bulk->depth_h_cm == wet.bulk->depth_h_cm);
  }
}

TEST_CASE("is_cleared") {
  BowlState empty;
  empty.bowl = BowlModel{{0, 0}, 0.05, 0.07, 0.0};
  CHECK(is_cleared(empty, 0.0));

  BowlState chunky = empty;
  chunky.chunks.push_back(Chunk{1, {0.01, 0}, 0.008, ChunkMaterial::tofu, true});
  CHECK_FALSE(is_cleared(chunky, 100.0));
  chunky.chunks[0].intact = false;  // broken chunks no longer block clearing
  CHECK(is_cleared(chunky, 100.0));

  BowlState wet = water_bowl(25.0);
  CHECK(is_cleared(wet, 25.0));  // boundary is inclusive
  CHECK_FALSE(is_cleared(wet, 24.999));

  CHECK_THROWS_AS(is_cleared(empty, -1.0), std::invalid_argument);
}

TEST_CASE("bulk mass conservation and monotone chunk counts") {
  const SimParams params;
  Rng rng(77);
  for (int episode = 0; episode < 200; ++episode) {
    BowlState s = water_bowl(rng.uniform(20.0, 180.0));
    s.bulk->fluidity = rng.uniform(0.0, 1.0);
    BowlState cur = s;
    for (int step = 0; step < 10; ++step) {
      const double before = cur.bulk_volume_ml();
      const double z = rng.uniform(0.0, 0.07);
      auto [next, out] = apply_scoop(cur, probe_scoop(z), 10.0, rng, params);
      const double after = next.bulk_volume_ml();
      REQUIRE(before - after ==
              Catch::Approx(out.scooped_volume_ml + out.spilled_ml).margin(1e-9));
      REQUIRE(after <= before + 1e-12);
      REQUIRE(out.scooped_volume_ml >= 0.0);
      REQUIRE(out.spilled_ml >= 0.0);
      REQUIRE((next.bulk->volume_ml == 0.0) == (next.bulk->depth_h_cm == 0.0));
      cur = next;
    }
  }
}

TEST_CASE("scenario files") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "lava_scenario_test";
  fs::create_directories(dir);

  Scenario sc;
  sc.name = "test-soup";
  sc.bowl = BowlModel{{0, 0}, 0.05, 0.07, 0.0};
  sc.bulk = ScenarioBulk{FoodKind::liquid, std::nullopt, 4.5, 0.9};
  sc.chunks.push_back(ScenarioChunk{1, {0.02, 0.01}, 0.009, ChunkMaterial::tofu});
  sc.chunks.push_back(ScenarioChunk{2, {-0.017, -0.02}, 0.01, ChunkMaterial::fruit});
  sc.seed = 99;

  SECTION("round-trip is lossless") {
    const std::string path = (dir / "soup.json").string();
    save_scenario(sc, path);
    const Scenario back = load_scenario(path);
    CHECK(back == sc);
    // And a second save produces identical bytes.
    const std::string path2 = (dir / "soup2.json").string();
    save_scenario(back, path2);
    std::ifstream f1(path), f2(path2);
    const std::string s1((std::istreambuf_iterator<char>(f1)), {});
    const std::string s2((std::istreambuf_iterator<char>(f2)), {});
    CHECK(s1 == s2);
  }

  SECTION("depth and volume entries agree through the bowl area") {
    const BowlState via_depth = sc.to_state();
    Scenario vol = sc;
    vol.bulk = ScenarioBulk{FoodKind::liquid,
                            volume_from_depth_ml(sc.bowl, 4.5), std::nullopt, 0.9};
    const BowlState via_volume = vol.to_state();
    CHECK(via_depth.bulk->volume_ml == Catch::Approx(via_volume.bulk->volume_ml));
    CHECK(via_depth.bulk->depth_h_cm == Catch::Approx(via_volume.bulk->depth_h_cm));
  }

  SECTION("validation rejects bad scenes") {
    Scenario bad = sc;
    bad.chunks[0].pos = {0.06, 0.0};  // outside radius - chunk radius
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);

    Scenario dup = sc;
    dup.chunks[1].id = 1;
    CHECK_THROWS_AS(validate(dup), std::invalid_argument);

    Scenario both = sc;
    both.bulk->volume_ml = 10.0;  // both depth and volume set
    CHECK_THROWS_AS(validate(both), std::invalid_argument);
  }

  fs::remove_all(dir);
}
