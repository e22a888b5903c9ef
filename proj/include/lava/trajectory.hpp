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

#ifndef LAVA_TRAJECTORY_HPP_
#define LAVA_TRAJECTORY_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "lava/geometry.hpp"
#include "lava/params.hpp"
#include "lava/primitives.hpp"

namespace lava {

enum class PrimitiveFamily { wall_guided, direct };

inline const char* to_string(PrimitiveFamily f) {
  return f == PrimitiveFamily::wall_guided ? "wall-guided" : "direct";
}

inline PrimitiveFamily family_from_string(const std::string& s) {
  if (s == "wall-guided") return PrimitiveFamily::wall_guided;
  if (s == "direct") return PrimitiveFamily::direct;
  throw std::invalid_argument("unknown primitive family: " + s);
}

// One raw demonstration sample: timestamp, pose vector, pose velocity.
struct DemoSample {
  double t = 0.0;
  std::vector<double> q;
  std::vector<double> qdot;
};

// Raw timestamped demonstration of one primitive family. Timestamps are
// strictly increasing; every q has the same dimension.
struct Demonstration {
  PrimitiveFamily family = PrimitiveFamily::direct;
  std::vector<DemoSample> samples;

  std::size_t dim() const { return samples.empty() ? 0 : samples.front().q.size(); }
  double duration() const {
    return samples.size() < 2 ? 0.0 : samples.back().t - samples.front().t;
  }
};

inline void validate(const Demonstration& demo) {
  if (demo.samples.size() < 2) {
    throw std::invalid_argument("demonstration needs at least 2 samples");
  }
  const std::size_t d = demo.samples.front().q.size();
  double prev = demo.samples.front().t;
  for (std::size_t i = 0; i < demo.samples.size(); ++i) {
    const DemoSample& s = demo.samples[i];
    if (s.q.size() != d) throw std::invalid_argument("demonstration has mixed q dimensions");
    if (i > 0 && s.t <= prev) throw std::invalid_argument("demonstration timestamps must strictly increase");
    prev = s.t;
  }
}

// Executable fixed-length trajectory of spoon-tip actions.
struct Trajectory {
  PrimitiveFamily family = PrimitiveFamily::direct;
  std::vector<SpoonPose> waypoints;
  double duration = 0.0;

  std::size_t size() const { return waypoints.size(); }

  // Index of the deepest waypoint (maximal insertion).
  std::size_t lowest_index() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < waypoints.size(); ++i) {
      if (waypoints[i].insertion_z > waypoints[best].insertion_z) best = i;
    }
    return best;
  }

  double max_insertion() const {
    double z = 0.0;
    for (const SpoonPose& w : waypoints) z = std::max(z, w.insertion_z);
    return z;
  }
};

inline constexpr std::size_t kPoseDim = 5;  // (x, y, roll, pitch, z)

inline std::vector<double> flatten(const SpoonPose& p) {
  return {p.tip.x, p.tip.y, p.roll_gamma, p.pitch_beta, p.insertion_z};
}

inline SpoonPose unflatten_pose(const double* v) {
  SpoonPose p;
  p.tip = {v[0], v[1]};
  p.roll_gamma = v[2];
  p.pitch_beta = v[3];
  p.insertion_z = v[4];
  return p;
}

// --- Resampling ------------------------------------------------------------

// Linear interpolation of q at `count` equally spaced times over the demo's
// time span. Endpoints are preserved; duration carries over.
inline Trajectory resample(const Demonstration& demo, std::size_t count) {
  validate(demo);
  if (count < 2) throw std::invalid_argument("resample: need at least 2 waypoints");
  if (demo.dim() != kPoseDim) {
    throw std::invalid_argument("resample: demonstration q must have dimension 5");
  }

  const double t0 = demo.samples.front().t;
  const double t1 = demo.samples.back().t;
  Trajectory out;
  out.family = demo.family;
  out.duration = t1 - t0;
  out.waypoints.reserve(count);

  std::size_t seg = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(count - 1);
    const double t = t0 + u * (t1 - t0);
    while (seg + 2 < demo.samples.size() && demo.samples[seg + 1].t < t) ++seg;
    const DemoSample& a = demo.samples[seg];
    const DemoSample& b = demo.samples[seg + 1];
    const double w = (t - a.t) / (b.t - a.t);
    double q[kPoseDim];
    for (std::size_t k = 0; k < kPoseDim; ++k) {
      if (i == 0) {
        q[k] = demo.samples.front().q[k];
      } else if (i == count - 1) {
        q[k] = demo.samples.back().q[k];
      } else {
        q[k] = a.q[k] + w * (b.q[k] - a.q[k]);
      }
    }
    out.waypoints.push_back(unflatten_pose(q));
  }
  return out;
}

// --- Geometric median -------------------------------------------------------

struct MedianConfig {
  double epsilon = 1e-8;       // iterate-change stopping threshold
  std::size_t max_iters = 10000;
  double anchor_jitter = 1e-9;  // nudge applied when an iterate lands on a data point
};

struct MedianResult {
  std::vector<double> point;
  std::size_t iterations = 0;
  bool converged = false;
  double objective = 0.0;
  std::vector<double> objective_trace;  // objective after each iterate
};

inline double sum_of_distances(const std::vector<double>& x,
                               const std::vector<std::vector<double>>& points) {
  double total = 0.0;
  for (const std::vector<double>& p : points) {
    double d2 = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double d = x[k] - p[k];
      d2 += d * d;
    }
    total += std::sqrt(d2);
  }
  return total;
}

// Weiszfeld fixed-point iteration for the point minimizing the sum of
// Euclidean distances to `points`. Iterates until the change drops below
// cfg.epsilon or max_iters is reached (reported via `converged`). Iterates
// landing within anchor_jitter of a data point are nudged before the next
// update, since the raw weight 1/d blows up there.
inline MedianResult geometric_median(const std::vector<std::vector<double>>& points,
                                     const MedianConfig& cfg = {}) {
  if (points.empty()) throw std::invalid_argument("geometric_median: empty input");
  const std::size_t dim = points.front().size();
  if (dim == 0) throw std::invalid_argument("geometric_median: zero-dimensional points");
  for (const std::vector<double>& p : points) {
    if (p.size() != dim) throw std::invalid_argument("geometric_median: mixed dimensions");
  }

  MedianResult res;
  if (points.size() == 1) {
    res.point = points.front();
    res.converged = true;
    res.objective = 0.0;
    return res;
  }

  // Start from the centroid.
  std::vector<double> x(dim, 0.0);
  for (const std::vector<double>& p : points) {
    for (std::size_t k = 0; k < dim; ++k) x[k] += p[k];
  }
  for (std::size_t k = 0; k < dim; ++k) x[k] /= static_cast<double>(points.size());

  res.objective_trace.push_back(sum_of_distances(x, points));

  std::vector<double> next(dim, 0.0);
  for (std::size_t it = 1; it <= cfg.max_iters; ++it) {
    // Nudge off any coincident data point.
    for (const std::vector<double>& p : points) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double d = x[k] - p[k];
        d2 += d * d;
      }
      if (std::sqrt(d2) < cfg.anchor_jitter) {
        x[0] += cfg.anchor_jitter;
        break;
      }
    }

    std::fill(next.begin(), next.end(), 0.0);
    double wsum = 0.0;
    for (const std::vector<double>& p : points) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double d = x[k] - p[k];
        d2 += d * d;
      }
      const double w = 1.0 / std::sqrt(d2);
      wsum += w;
      for (std::size_t k = 0; k < dim; ++k) next[k] += w * p[k];
    }
    for (std::size_t k = 0; k < dim; ++k) next[k] /= wsum;

    double step2 = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double d = next[k] - x[k];
      step2 += d * d;
    }
    x = next;
    res.iterations = it;
    res.objective_trace.push_back(sum_of_distances(x, points));
    if (std::sqrt(step2) < cfg.epsilon) {
      res.converged = true;
      break;
    }
  }

  res.point = x;
  res.objective = res.objective_trace.back();
  return res;
}

// --- Demonstration aggregation ----------------------------------------------

// Resamples every demo to `count` waypoints, takes the geometric median in
// the flattened trajectory space, and unflattens the result. The duration is
// the median of the demo durations.
inline Trajectory aggregate_demos(const std::vector<Demonstration>& demos,
                                  std::size_t count,
                                  const MedianConfig& cfg = {}) {
  if (demos.empty()) throw std::invalid_argument("aggregate_demos: no demonstrations");
  const PrimitiveFamily family = demos.front().family;
  std::vector<std::vector<double>> points;
  std::vector<double> durations;
  points.reserve(demos.size());
  for (const Demonstration& demo : demos) {
    if (demo.family != family) {
      throw std::invalid_argument("aggregate_demos: mixed primitive families");
    }
    const Trajectory traj = resample(demo, count);
    std::vector<double> flat;
    flat.reserve(count * kPoseDim);
    for (const SpoonPose& w : traj.waypoints) {
      const std::vector<double> f = flatten(w);
      flat.insert(flat.end(), f.begin(), f.end());
    }
    points.push_back(std::move(flat));
    durations.push_back(traj.duration);
  }

  const MedianResult med = geometric_median(points, cfg);

  Trajectory out;
  out.family = family;
  out.waypoints.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.waypoints.push_back(unflatten_pose(med.point.data() + i * kPoseDim));
  }
  std::sort(durations.begin(), durations.end());
  const std::size_t n = durations.size();
  out.duration = (n % 2 == 1) ? durations[n / 2]
                              : 0.5 * (durations[n / 2 - 1] + durations[n / 2]);
  return out;
}

// --- Trajectory cost ---------------------------------------------------------

struct CostWeights {
  double w_q = 1.0;  // squared deviation from the reference
  double w_v = 1.0;  // squared velocity
};

// Discrete approximation of the integral cost: per segment, a quadratic
// penalty on deviation from the reference template plus a quadratic penalty
// on velocity, scaled by the segment dt.
inline double trajectory_cost(const Trajectory& traj, const Trajectory& reference,
                              const CostWeights& weights) {
  if (traj.size() != reference.size()) {
    throw std::invalid_argument("trajectory_cost: trajectory/reference length mismatch");
  }
  if (traj.size() < 2) return 0.0;
  const double dt = traj.duration / static_cast<double>(traj.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
    const std::vector<double> a = flatten(traj.waypoints[i]);
    const std::vector<double> b = flatten(traj.waypoints[i + 1]);
    const std::vector<double> r = flatten(reference.waypoints[i]);
    double dev2 = 0.0, vel2 = 0.0;
    for (std::size_t k = 0; k < kPoseDim; ++k) {
      const double d = a[k] - r[k];
      dev2 += d * d;
      const double v = (b[k] - a[k]) / dt;
      vel2 += v * v;
    }
    total += (weights.w_q * dev2 + weights.w_v * vel2) * dt;
  }
  return total;
}

// --- Parameterized warping ----------------------------------------------------

// Shifts the z profile so the deepest insertion equals `target_insertion`.
// All other coordinates are untouched.
inline Trajectory shift_insertion(const Trajectory& tmpl, double target_insertion) {
  Trajectory out = tmpl;
  const double zmax = tmpl.max_insertion();
  for (SpoonPose& w : out.waypoints) {
    // (z - zmax) + target is exact at the extremum.
    w.insertion_z = std::max(0.0, (w.insertion_z - zmax) + target_insertion);
  }
  return out;
}

// Warps a wall-guided template (recorded along bearing 0) so its dig point
// lands on the target at distance `delta` along `bearing`, the approach ray
// passes through the target, and the wall-press reaches the bowl wall.
inline Trajectory adapt_wall_guided(const Trajectory& tmpl, double delta,
                                    double bearing, const BowlModel& bowl,
                                    const SimParams& params) {
  if (tmpl.family != PrimitiveFamily::wall_guided) {
    throw std::invalid_argument("adapt_wall_guided: template family mismatch");
  }
  Trajectory out = tmpl;
  const std::size_t dig = tmpl.lowest_index();
  const double s_dig = tmpl.waypoints[dig].tip.x;
  const double s_end = tmpl.waypoints.back().tip.x;
  const double r_press = std::max(bowl.radius - params.wall_margin_m, delta + 0.005);
  const double stretch = (s_end > s_dig) ? (r_press - delta) / (s_end - s_dig) : 1.0;

  for (std::size_t i = 0; i < out.waypoints.size(); ++i) {
    SpoonPose& w = out.waypoints[i];
    const double s = tmpl.waypoints[i].tip.x;
    double s_new;
    if (s <= s_dig) {
      s_new = std::max(0.0, s + (delta - s_dig));  // shape-preserving approach
    } else {
      s_new = delta + (s - s_dig) * stretch;  // press out to the wall
    }
    const Vec2 local{s_new, tmpl.waypoints[i].tip.y};
    w.tip = bowl.center + local.rotated(bearing);
    w.roll_gamma = wrap_angle(tmpl.waypoints[i].roll_gamma + bearing);
  }
  return out;
}

// Behavior-cloned trajectory adapted to the mid-level parameters.
inline Trajectory adapt_trajectory(const Trajectory& tmpl, const MidPrimitive& mid,
                                   const BowlModel& bowl, const SimParams& params) {
  if (std::holds_alternative<DirectScoop>(mid)) {
    if (tmpl.family != PrimitiveFamily::direct) {
      throw std::invalid_argument("adapt_trajectory: direct scoop needs a direct template");
    }
    const double h = std::get<DirectScoop>(mid).depth_class_cm;
    return shift_insertion(tmpl, ideal_insertion_m(bowl, h, params));
  }
  if (std::holds_alternative<WallGuidedScoop>(mid)) {
    const WallGuidedScoop& wg = std::get<WallGuidedScoop>(mid);
    return adapt_wall_guided(tmpl, wg.delta, wg.bearing, bowl, params);
  }
  throw std::invalid_argument("adapt_trajectory: align pushes are built directly, not warped");
}

}  // namespace lava

#endif  // LAVA_TRAJECTORY_HPP_
