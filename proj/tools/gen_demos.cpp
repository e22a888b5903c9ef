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

// Regenerates the shipped synthetic demonstration files (25 per primitive
// family). Deterministic for a given seed.

#include <cstdio>
#include <filesystem>
#include <string>

#include "CLI11.hpp"
#include "lava/demos.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate the synthetic demonstration corpus"};
  std::string out_dir = "data/demos";
  std::uint64_t seed = 1;
  int count = 25;
  app.add_option("--out", out_dir, "output directory (gets wall_guided/ and direct/)");
  app.add_option("--seed", seed, "generator seed");
  app.add_option("--count", count, "demos per family");
  CLI11_PARSE(app, argc, argv);

  for (const lava::PrimitiveFamily family :
       {lava::PrimitiveFamily::wall_guided, lava::PrimitiveFamily::direct}) {
    const std::string sub = family == lava::PrimitiveFamily::wall_guided
                                ? "wall_guided" : "direct";
    const std::filesystem::path dir = std::filesystem::path(out_dir) / sub;
    std::filesystem::create_directories(dir);
    const auto demos = lava::synth_demo_set(family, static_cast<std::size_t>(count), seed);
    for (std::size_t i = 0; i < demos.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "demo_%02zu.txt", i);
      lava::save_demo(demos[i], (dir / name).string());
    }
    std::printf("wrote %zu %s demos under %s\n", demos.size(), sub.c_str(),
                dir.string().c_str());
  }
  return 0;
}
