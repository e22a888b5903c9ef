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

#ifndef LAVA_SELFTEST_HPP_
#define LAVA_SELFTEST_HPP_

#include <cmath>
#include <ostream>
#include <vector>

#include "lava/rng.hpp"
#include "lava/trajectory.hpp"

namespace lava {

// Independent 2-D geometric-median oracle: exhaustive grid search over the
// bounding box with repeated local refinement around the best cell. Shares no
// machinery with the Weiszfeld iteration it checks.
inline std::vector<double> grid_median_oracle(const std::vector<std::vector<double>>& points,
                                              int grid = 28, int rounds = 9) {
  double lo_x = points[0][0], hi_x = points[0][0];
  double lo_y = points[0][1], hi_y = points[0][1];
  for (const auto& p : points) {
    lo_x = std::min(lo_x, p[0]);
    hi_x = std::max(hi_x, p[0]);
    lo_y = std::min(lo_y, p[1]);
    hi_y = std::max(hi_y, p[1]);
  }
  const double pad = 1e-6 + 0.05 * std::max(hi_x - lo_x, hi_y - lo_y);
  lo_x -= pad; hi_x += pad; lo_y -= pad; hi_y += pad;

  double best_x = 0.0, best_y = 0.0;
  for (int round = 0; round < rounds; ++round) {
    double best = std::numeric_limits<double>::infinity();
    const double dx = (hi_x - lo_x) / grid;
    const double dy = (hi_y - lo_y) / grid;
    for (int i = 0; i <= grid; ++i) {
      for (int j = 0; j <= grid; ++j) {
        const double x = lo_x + i * dx;
        const double y = lo_y + j * dy;
        double obj = 0.0;
        for (const auto& p : points) obj += std::hypot(x - p[0], y - p[1]);
        if (obj < best) {
          best = obj;
          best_x = x;
          best_y = y;
        }
      }
    }
    // Shrink the window around the winner.
    const double wx = 2.0 * dx, wy = 2.0 * dy;
    lo_x = best_x - wx; hi_x = best_x + wx;
    lo_y = best_y - wy; hi_y = best_y + wy;
  }
  return {best_x, best_y};
}

struct SelftestCase {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Weiszfeld verification suite: exact symmetry cases plus randomized
// instances checked against the grid oracle, with per-iteration objective
// monotonicity. Used by both the test suite and the CLI selftest command.
inline std::vector<SelftestCase> run_median_selftest(std::uint64_t seed = 20240917) {
  std::vector<SelftestCase> cases;
  const MedianConfig cfg;

  auto check = [&](const std::string& name, bool ok, const std::string& detail) {
    cases.push_back(SelftestCase{name, ok, detail});
  };

  {
    const MedianResult r = geometric_median({{0.4, -1.7}});
    check("single point", r.point[0] == 0.4 && r.point[1] == -1.7 && r.converged,
          "median of one point is the point");
  }
  {
    const MedianResult r =
        geometric_median({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, cfg);
    const bool ok = std::abs(r.point[0] - 0.5) < 1e-6 && std::abs(r.point[1] - 0.5) < 1e-6;
    check("unit square center", ok && r.converged, "median of the four corners is (0.5, 0.5)");
  }
  {
    // Equilateral triangle centered at the origin.
    std::vector<std::vector<double>> tri;
    for (int k = 0; k < 3; ++k) {
      const double a = 2.0 * kPi * k / 3.0 + 0.3;
      tri.push_back({std::cos(a), std::sin(a)});
    }
    const MedianResult r = geometric_median(tri, cfg);
    const bool ok = std::abs(r.point[0]) < 1e-6 && std::abs(r.point[1]) < 1e-6;
    check("equilateral centroid", ok && r.converged, "median of an equilateral triangle is its centroid");
  }
  {
    const MedianResult r = geometric_median({{0.0}, {1.0}, {10.0}}, cfg);
    check("odd collinear median", std::abs(r.point[0] - 1.0) < 1e-6,
          "median of {0, 1, 10} is the middle point");
  }

  // Randomized instances against the grid oracle.
  Rng rng(seed);
  bool all_close = true, all_monotone = true;
  double worst_rel = 0.0;
  for (int inst = 0; inst < 50; ++inst) {
    const std::size_t n = 5 + rng.pick(5);
    std::vector<std::vector<double>> points;
    for (std::size_t i = 0; i < n; ++i) {
      points.push_back({rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)});
    }
    const MedianResult r = geometric_median(points, cfg);
    const std::vector<double> g = grid_median_oracle(points);
    const double jw = sum_of_distances(r.point, points);
    const double jg = sum_of_distances(g, points);
    const double rel = std::abs(jw - jg) / jg;
    worst_rel = std::max(worst_rel, rel);
    if (rel > 1e-3) all_close = false;
    for (std::size_t k = 1; k < r.objective_trace.size(); ++k) {
      if (r.objective_trace[k] > r.objective_trace[k - 1] + 1e-12) all_monotone = false;
    }
  }
  check("random vs grid oracle", all_close,
        "50 seeded instances within 1e-3 relative objective (worst " +
            std::to_string(worst_rel) + ")");
  check("objective monotonicity", all_monotone,
        "sum of distances nonincreasing on every iteration of every instance");

  return cases;
}

inline bool print_selftest(const std::vector<SelftestCase>& cases, std::ostream& out) {
  bool all = true;
  for (const SelftestCase& c : cases) {
    out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
    all = all && c.passed;
  }
  return all;
}

}  // namespace lava

#endif  // LAVA_SELFTEST_HPP_
