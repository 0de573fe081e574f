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

// Iterative ranking of tiles: each step picks the tile that adds the most
// information on top of the background and the tiles already ranked.
//
// Exact mode evaluates d(L u {U}, T; B) for every remaining U. Heuristic mode
// fits the model of L u B once per step and picks the tile whose frequency is
// most surprising under it, scored as the area-weighted Bernoulli divergence
//
//   |area(U)| * [a ln(a/b) + (1-a) ln((1-a)/(1-b))],  b = freq(U; model).

#pragma once

#include <cmath>
#include <cstddef>
#include <string_view>
#include <vector>

#include "tilediv/core.hpp"
#include "tilediv/divergence.hpp"
#include "tilediv/error.hpp"
#include "tilediv/maxent.hpp"

namespace tilediv {

enum class RankMode { kExact, kHeuristic };

inline std::string_view to_string(RankMode mode) {
  return mode == RankMode::kExact ? "exact" : "heuristic";
}

struct Ranking {
  RankMode mode = RankMode::kExact;
  std::vector<FreqTile> order;
  std::vector<std::size_t> positions;  // input index of each ranked tile
  std::vector<double> distances;       // d(L, T; B) after each step
  std::vector<double> gains;           // decrease of d at each step
  double initial_distance = 1.0;       // d(empty, T; B)
};

// Frequencies closer than this count as equal.
inline constexpr double kSameFrequency = 1e-12;
// Scores or distances closer than this are ties, resolved by input order.
inline constexpr double kRankTie = 1e-12;

inline double surprise_score(const FreqTile& candidate,
                             const EntryModel& current) {
  const double a = candidate.alpha();
  const double b = model_frequency(candidate.tile(), current);
  if (std::abs(a - b) <= kSameFrequency) return 0.0;
  if (b <= 0.0 || b >= 1.0) {
    throw Error(ErrorCode::kInfiniteSurprise,
                "model frequency " + std::to_string(b) +
                    " is deterministic but the tile says " +
                    std::to_string(a));
  }
  double div = 0.0;
  if (a > 0.0) div += a * std::log(a / b);
  if (a < 1.0) div += (1.0 - a) * std::log((1.0 - a) / (1.0 - b));
  return static_cast<double>(candidate.tile().area()) * div;
}

inline Ranking fitamin(const TileSet& tiles, const TileSet& background,
                       RankMode mode, const FitOptions& opts = {}) {
  const Dims dims = tiles.dims();
  Ranking out;
  out.mode = mode;
  TileSet ranked(dims);
  double current = distance(ranked, tiles, background, opts).value;
  out.initial_distance = current;

  std::vector<std::size_t> remaining;
  for (std::size_t k = 0; k < tiles.size(); ++k) remaining.push_back(k);

  while (!remaining.empty()) {
    std::size_t pick = 0;
    double after = 0.0;
    if (mode == RankMode::kExact) {
      double best = 0.0;
      for (std::size_t r = 0; r < remaining.size(); ++r) {
        const double d = distance(with_tile(ranked, tiles[remaining[r]]),
                                  tiles, background, opts)
                             .value;
        if (r == 0 || d < best - kRankTie) {
          pick = r;
          best = d;
        }
      }
      after = best;
    } else {
      const EntryModel known = fit(unite(ranked, background), opts);
      double best = 0.0;
      for (std::size_t r = 0; r < remaining.size(); ++r) {
        const double s = surprise_score(tiles[remaining[r]], known);
        if (r == 0 || s > best + kRankTie) {
          pick = r;
          best = s;
        }
      }
      after = distance(with_tile(ranked, tiles[remaining[pick]]), tiles,
                       background, opts)
                  .value;
    }
    const std::size_t position = remaining[pick];
    ranked = with_tile(ranked, tiles[position]);
    out.order.push_back(tiles[position]);
    out.positions.push_back(position);
    out.distances.push_back(after);
    out.gains.push_back(current - after);
    current = after;
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

}  // namespace tilediv
