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

#ifndef LAVA_DEMOS_HPP_
#define LAVA_DEMOS_HPP_

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lava/policy.hpp"
#include "lava/rng.hpp"
#include "lava/trajectory.hpp"

namespace lava {

// --- Canonical kinesthetic profiles -------------------------------------------
//
// The shipped demonstrations are noisy variants of these two profiles,
// standing in for kinesthetic teaching on a reference bowl.

inline double smoothstep(double lo, double hi, double u) {
  const double t = std::clamp((u - lo) / (hi - lo), 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

// Direct scoop: top entry at the bowl center with a short drag, bell-shaped
// insertion, pitch rolling from tipped-back to level.
inline SpoonPose canonical_direct_pose(double u) {
  SpoonPose w;
  w.tip = {0.015 * (smoothstep(0.25, 0.75, u) - 0.5), 0.0};
  w.roll_gamma = 0.0;
  w.pitch_beta = -0.45 + 0.75 * u;
  w.insertion_z = 0.045 * std::sin(kPi * u);
  return w;
}

// Wall-guided scoop along bearing 0: plunge behind the target, slide under it
// (deepest right at the target), quick rise, then carry to the wall press and
// lift. The radial profile is what adapt_wall_guided warps.
inline SpoonPose canonical_wall_pose(double u) {
  SpoonPose w;
  w.roll_gamma = 0.0;
  double s, z, pitch;
  if (u < 0.12) {  // plunge
    const double v = u / 0.12;
    s = 0.016;
    z = 0.058 * v;
    pitch = -0.30;
  } else if (u < 0.45) {  // deep slide to the target
    const double v = (u - 0.12) / 0.33;
    s = 0.016 + 0.019 * v;
    z = 0.058 + 0.002 * v;
    pitch = -0.30 + 0.15 * v;
  } else if (u < 0.60) {  // rise with the bite
    const double v = (u - 0.45) / 0.15;
    s = 0.035 + 0.006 * v;
    z = 0.060 - 0.040 * v;
    pitch = -0.15 + 0.35 * v;
  } else if (u < 0.88) {  // carry toward the wall
    const double v = (u - 0.60) / 0.28;
    s = 0.041 + 0.017 * v;
    z = 0.020 - 0.004 * v;
    pitch = 0.20 + 0.15 * v;
  } else {  // wall press and lift
    const double v = (u - 0.88) / 0.12;
    s = 0.058 + 0.004 * v;
    z = 0.016 * (1.0 - v);
    pitch = 0.35 + 0.10 * v;
  }
  w.tip = {s, 0.0};
  w.pitch_beta = pitch;
  w.insertion_z = z;
  return w;
}

inline SpoonPose canonical_pose(PrimitiveFamily family, double u) {
  return family == PrimitiveFamily::direct ? canonical_direct_pose(u)
                                           : canonical_wall_pose(u);
}

// One synthetic kinesthetic demonstration: jittered timestamps, smooth
// low-frequency drift plus white noise on top of the canonical profile,
// velocities by finite differences.
inline Demonstration synth_demo(PrimitiveFamily family, Rng& rng) {
  Demonstration demo;
  demo.family = family;
  const std::size_t n = 40 + rng.pick(41);
  const double duration = rng.uniform(2.2, 2.9);

  struct Drift {
    double amp, freq, phase;
  };
  Drift drift[kPoseDim];
  const double amps[kPoseDim] = {0.002, 0.002, 0.03, 0.03, 0.002};
  for (std::size_t k = 0; k < kPoseDim; ++k) {
    drift[k] = {amps[k] * rng.uniform(0.3, 1.0), 1.0 + static_cast<double>(rng.pick(3)),
                rng.uniform(0.0, 2.0 * kPi)};
  }

  demo.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double u = static_cast<double>(i) / static_cast<double>(n - 1);
    if (i > 0 && i + 1 < n) {
      u += 0.35 * (rng.uniform() - 0.5) / static_cast<double>(n - 1);
    }
    DemoSample s;
    s.t = duration * u;
    std::vector<double> q = flatten(canonical_pose(family, u));
    for (std::size_t k = 0; k < kPoseDim; ++k) {
      q[k] += drift[k].amp * std::sin(2.0 * kPi * drift[k].freq * u + drift[k].phase);
      q[k] += 0.0003 * (rng.uniform() - 0.5);
    }
    q[4] = std::max(0.0, q[4]);  // insertion depth never rises above the rim
    s.q = q;
    demo.samples.push_back(std::move(s));
  }

  // Finite-difference velocities.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = (i == 0) ? 0 : i - 1;
    const std::size_t b = (i + 1 == n) ? i : i + 1;
    const double dt = demo.samples[b].t - demo.samples[a].t;
    std::vector<double> v(kPoseDim, 0.0);
    for (std::size_t k = 0; k < kPoseDim; ++k) {
      v[k] = (demo.samples[b].q[k] - demo.samples[a].q[k]) / dt;
    }
    demo.samples[i].qdot = std::move(v);
  }
  return demo;
}

inline std::vector<Demonstration> synth_demo_set(PrimitiveFamily family,
                                                 std::size_t count,
                                                 std::uint64_t seed) {
  Rng rng(mix_seeds(seed, family == PrimitiveFamily::direct ? 2 : 1));
  std::vector<Demonstration> demos;
  demos.reserve(count);
  for (std::size_t i = 0; i < count; ++i) demos.push_back(synth_demo(family, rng));
  return demos;
}

// Library built by aggregating the standard 25-demo sets.
inline TrajectoryLibrary default_library(const SimParams& params = {},
                                         std::uint64_t seed = 1) {
  TrajectoryLibrary lib;
  const std::size_t len = static_cast<std::size_t>(params.trajectory_len);
  lib.wall_guided = aggregate_demos(
      synth_demo_set(PrimitiveFamily::wall_guided, 25, seed), len);
  lib.direct = aggregate_demos(synth_demo_set(PrimitiveFamily::direct, 25, seed), len);
  return lib;
}

// --- Demo files ----------------------------------------------------------------
//
// Line-delimited text: a header naming the family and the q dimension, then
// one record per sample: t q[0..D-1] qdot[0..D-1].

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void save_demo(const Demonstration& demo, const std::string& path) {
  validate(demo);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write demo file: " + path);
  out << "family " << to_string(demo.family) << "\n";
  out << "dim " << demo.dim() << "\n";
  for (const DemoSample& s : demo.samples) {
    out << format_double(s.t);
    for (double q : s.q) out << " " << format_double(q);
    for (double qd : s.qdot) out << " " << format_double(qd);
    out << "\n";
  }
}

inline Demonstration load_demo(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open demo file: " + path);
  Demonstration demo;
  std::size_t dim = 0;
  std::string line;
  bool have_family = false, have_dim = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (!have_family) {
      std::string key, value;
      ls >> key >> value;
      if (key != "family") throw std::runtime_error("demo file " + path + ": missing family header");
      demo.family = family_from_string(value);
      have_family = true;
      continue;
    }
    if (!have_dim) {
      std::string key;
      ls >> key >> dim;
      if (key != "dim" || dim == 0) throw std::runtime_error("demo file " + path + ": missing dim header");
      have_dim = true;
      continue;
    }
    DemoSample s;
    ls >> s.t;
    s.q.resize(dim);
    s.qdot.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) ls >> s.q[k];
    for (std::size_t k = 0; k < dim; ++k) ls >> s.qdot[k];
    if (!ls) throw std::runtime_error("demo file " + path + ": malformed record");
    demo.samples.push_back(std::move(s));
  }
  validate(demo);
  return demo;
}

// Loads every demo of one family from a directory (sorted for determinism).
inline std::vector<Demonstration> load_demo_dir(const std::string& dir,
                                                PrimitiveFamily family) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Demonstration> demos;
  for (const auto& f : files) {
    Demonstration d = load_demo(f.string());
    if (d.family == family) demos.push_back(std::move(d));
  }
  if (demos.empty()) {
    throw std::runtime_error("no " + std::string(to_string(family)) + " demos under " + dir);
  }
  return demos;
}

// --- Trajectory (template) files -------------------------------------------------

inline void save_trajectory(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trajectory file: " + path);
  out << "family " << to_string(traj.family) << "\n";
  out << "T " << traj.size() << "\n";
  out << "duration " << format_double(traj.duration) << "\n";
  for (const SpoonPose& w : traj.waypoints) {
    out << format_double(w.tip.x) << " " << format_double(w.tip.y) << " "
        << format_double(w.roll_gamma) << " " << format_double(w.pitch_beta) << " "
        << format_double(w.insertion_z) << "\n";
  }
}

inline Trajectory load_trajectory(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trajectory file: " + path);
  Trajectory traj;
  std::string key, value;
  std::size_t len = 0;
  in >> key >> value;
  if (key != "family") throw std::runtime_error("trajectory file " + path + ": missing family");
  traj.family = family_from_string(value);
  in >> key >> len;
  if (key != "T" || len < 2) throw std::runtime_error("trajectory file " + path + ": missing length");
  in >> key >> traj.duration;
  if (key != "duration") throw std::runtime_error("trajectory file " + path + ": missing duration");
  traj.waypoints.resize(len);
  for (SpoonPose& w : traj.waypoints) {
    in >> w.tip.x >> w.tip.y >> w.roll_gamma >> w.pitch_beta >> w.insertion_z;
  }
  if (!in) throw std::runtime_error("trajectory file " + path + ": malformed waypoints");
  return traj;
}

// Library loaded from a shipped demos directory with wall_guided/ and
// direct/ subdirectories.
inline TrajectoryLibrary load_library(const std::string& demos_dir,
                                      const SimParams& params = {}) {
  const std::size_t len = static_cast<std::size_t>(params.trajectory_len);
  TrajectoryLibrary lib;
  lib.wall_guided = aggregate_demos(
      load_demo_dir(demos_dir + "/wall_guided", PrimitiveFamily::wall_guided), len);
  lib.direct = aggregate_demos(
      load_demo_dir(demos_dir + "/direct", PrimitiveFamily::direct), len);
  return lib;
}

}  // namespace lava

#endif  // LAVA_DEMOS_HPP_
