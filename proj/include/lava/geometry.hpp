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

#ifndef LAVA_GEOMETRY_HPP_
#define LAVA_GEOMETRY_HPP_

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace lava {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Planar position in meters.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }

  double norm() const { return std::hypot(x, y); }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }

  Vec2 rotated(double angle) const {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * x - s * y, s * x + c * y};
  }
};

inline Vec2 polar(double radius, double angle) {
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}

// Spoon-tip action sample: planar tip position, roll/pitch, and insertion
// depth of the tip below the bowl rim (positive down).
struct SpoonPose {
  Vec2 tip;
  double roll_gamma = 0.0;   // (-pi, pi]
  double pitch_beta = 0.0;   // [-pi/2, pi/2]
  double insertion_z = 0.0;  // meters below rim, >= 0
};

struct BowlModel {
  Vec2 center;
  double radius = 0.0;       // meters, > 0
  double inner_depth = 0.0;  // meters, > 0
  double rotation = 0.0;     // radians, accumulated bowl orientation

  bool operator==(const BowlModel&) const = default;
};

enum class Subregion { R1, R2, R3 };

inline const char* to_string(Subregion s) {
  switch (s) {
    case Subregion::R1: return "R1";
    case Subregion::R2: return "R2";
    default: return "R3";
  }
}

// Distance from a target centroid to the bowl center (the wall-guided
// scooping parameter).
inline double centroid_distance(const Vec2& target, const BowlModel& bowl) {
  return (target - bowl.center).norm();
}

// Subregion rule: R2 for centered items, R1 for the rightmost wall-adjacent
// item (ties broken by larger y), R3 otherwise. Bands are fractions of the
// bowl radius; "rightmost" is evaluated along world +x.
inline Subregion classify_subregion(const Vec2& target,
                                    const std::vector<Vec2>& all_targets,
                                    const BowlModel& bowl, double wall_band,
                                    double center_band) {
  if (!(center_band > 0.0 && center_band < wall_band && wall_band < 1.0)) {
    throw std::invalid_argument("classify_subregion: bands must satisfy 0 < center < wall < 1");
  }
  bool contained = false;
  for (const Vec2& t : all_targets) {
    if (t == target) { contained = true; break; }
  }
  if (!contained) {
    throw std::invalid_argument("classify_subregion: target not in target list");
  }

  const double delta = centroid_distance(target, bowl);
  if (delta / bowl.radius <= center_band) return Subregion::R2;

  bool found = false;
  Vec2 best;
  for (const Vec2& t : all_targets) {
    if (centroid_distance(t, bowl) / bowl.radius < wall_band) continue;
    if (!found || t.x > best.x || (t.x == best.x && t.y > best.y)) {
      best = t;
      found = true;
    }
  }
  if (found && delta / bowl.radius >= wall_band && target == best) {
    return Subregion::R1;
  }
  return Subregion::R3;
}

// Quadrant-aware angle of the vector from target toward the bowl center,
// in (-pi, pi].
inline double alignment_angle(const Vec2& target, const Vec2& bowl_center) {
  const Vec2 d = bowl_center - target;
  if (d.x == 0.0 && d.y == 0.0) {
    throw std::invalid_argument("alignment_angle: target coincides with bowl center");
  }
  double a = std::atan2(d.y, d.x);
  if (a <= -kPi) a = kPi;
  return a;
}

// Displacement that slides a target along its ray toward the bowl center,
// stopping stop_margin short of it.
inline Vec2 push_vector(const Vec2& target, const BowlModel& bowl,
                        double stop_margin) {
  const double delta = centroid_distance(target, bowl);
  if (delta == 0.0) {
    throw std::invalid_argument("push_vector: target coincides with bowl center");
  }
  if (stop_margin < 0.0 || stop_margin >= delta) {
    throw std::invalid_argument("push_vector: stop_margin must be in [0, delta)");
  }
  const Vec2 dir = (bowl.center - target) * (1.0 / delta);
  return dir * (delta - stop_margin);
}

// Minimum distance from a point to the segment [a, b].
inline double point_segment_distance(const Vec2& p, const Vec2& a,
                                     const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.dot(ab);
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + ab * t)).norm();
}

// Minimum distance from a point to a polyline.
inline double point_polyline_distance(const Vec2& p,
                                      const std::vector<Vec2>& poly) {
  if (poly.empty()) throw std::invalid_argument("point_polyline_distance: empty polyline");
  if (poly.size() == 1) return (p - poly.front()).norm();
  double best = (p - poly.front()).norm();
  for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
    best = std::min(best, point_segment_distance(p, poly[i], poly[i + 1]));
  }
  return best;
}

}  // namespace lava

#endif  // LAVA_GEOMETRY_HPP_
