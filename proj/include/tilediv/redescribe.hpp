// Copyright 2026 The Authors.
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

#pragma once

#include <cstddef>
#include <vector>

#include "tilediv/core.hpp"
#include "tilediv/divergence.hpp"
#include "tilediv/maxent.hpp"

namespace tilediv {

struct Redescription {
  std::vector<FreqTile> selected;
  std::vector<double> trace;  // d(R, target; B) after each addition
  double initial_distance = 1.0;  // d(empty, target; B)
  double final_distance = 1.0;
};

// A candidate is only accepted if it lowers the distance by more than this.
inline constexpr double kMinImprovement = 1e-12;

// Greedy redescription: repeatedly adds the candidate that minimizes
// d(R u {C}, target; background) and stops once no candidate strictly
// improves. Ties go to the earlier candidate.
inline Redescription fruits(const TileSet& target, const TileSet& candidates,
                            const TileSet& background,
                            const FitOptions& opts = {}) {
  const Dims dims = target.dims();
  Redescription out;
  TileSet selected(dims);
  double current = distance(selected, target, background, opts).value;
  out.initial_distance = current;
  out.final_distance = current;

  std::vector<FreqTile> pool(candidates.begin(), candidates.end());
  while (!pool.empty()) {
    std::size_t best = pool.size();
    double best_d = current;
    for (std::size_t k = 0; k < pool.size(); ++k) {
      const double d =
          distance(with_tile(selected, pool[k]), target, background, opts)
              .value;
      if (d < best_d - kMinImprovement) {
        best = k;
        best_d = d;
      }
    }
    if (best == pool.size()) break;
    selected = with_tile(selected, pool[best]);
    out.selected.push_back(pool[best]);
    out.trace.push_back(best_d);
    current = best_d;
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
  }
  out.final_distance = current;
  return out;
}

}  // namespace tilediv
